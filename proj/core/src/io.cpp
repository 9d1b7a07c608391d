#include "dtlure/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace dtlure {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    const int n = traj.x.empty() ? 0 : static_cast<int>(traj.x[0].size());
    const bool have_proj = !traj.proj_norm.empty();

    os << "k,y,nu,mode,proj_norm";
    for (int i = 1; i <= n; ++i) os << ",x_" << i;
    if (traj.exact) {
        os << ",y_exact";
        for (int i = 1; i <= n; ++i) os << ",x_" << i << "_exact";
    }
    os << "\n";

    for (int k = 0; k <= traj.steps(); ++k) {
        const size_t kk = static_cast<size_t>(k);
        os << k << "," << format_number(traj.y[kk]) << "," << format_number(traj.nu[kk]) << ","
           << to_string(traj.mode[kk]) << ",";
        if (have_proj) os << format_number(traj.proj_norm[kk]);
        for (int i = 0; i < n; ++i) os << "," << format_number(traj.x[kk](i));
        if (traj.exact) {
            os << "," << traj.y_exact[kk];
            for (int i = 0; i < n; ++i) os << "," << traj.x_exact[kk][static_cast<size_t>(i)];
        }
        os << "\n";
    }
    return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
    std::ostringstream os;
    os << "alpha,spr\n";
    for (size_t i = 0; i < sweep.alphas.size(); ++i)
        os << format_number(sweep.alphas[i]) << "," << format_number(sweep.spr_values[i]) << "\n";
    return os.str();
}

std::string rootlocus_csv(const SweepResult& sweep) {
    std::ostringstream os;
    size_t n = 0;
    for (const auto& rs : sweep.root_tracks)
        n = std::max(n, static_cast<size_t>(rs.total_multiplicity()));

    os << "alpha";
    for (size_t i = 1; i <= n; ++i) os << ",re_" << i << ",im_" << i;
    os << "\n";

    for (size_t i = 0; i < sweep.alphas.size(); ++i) {
        auto roots = sweep.root_tracks[i].expanded();
        std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        os << format_number(sweep.alphas[i]);
        for (const auto& z : roots)
            os << "," << format_number(z.real()) << "," << format_number(z.imag());
        for (size_t pad = roots.size(); pad < n; ++pad) os << ",,";
        os << "\n";
    }
    return os.str();
}

}  // namespace dtlure
