#include <tflg/dsignal.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace tflg {

Signal read_signal_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open " + path);
    std::vector<Complex> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (auto& c : line) {
            if (c == ',') c = ' ';
        }
        std::istringstream ls(line);
        double re = 0, im = 0;
        if (!(ls >> re)) continue;   // header
        ls >> im;
        values.emplace_back(re, im);
    }
    if (values.empty()) throw precondition_error("read_signal_csv: no samples in " + path);
    Signal f(static_cast<Eigen::Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k) f(static_cast<Eigen::Index>(k)) = values[k];
    return f;
}

void write_signal_csv(const std::string& path, const Signal& f)
{
    std::ofstream out(path);
    if (!out) throw precondition_error("cannot write " + path);
    out << "re,im\n";
    char buf[64];
    for (Eigen::Index k = 0; k < f.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f(k).real(), f(k).imag());
        out << buf;
    }
}

} // namespace tflg
