#include "wsst/signal.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wsst/errors.hpp"

namespace wsst {

namespace {

constexpr char kMagic[4] = {'W', 'S', 'S', 'T'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

SampledSignal make_signal(std::vector<double> samples, double sample_rate, std::string label) {
    if (samples.size() < 2) throw EmptySignal("signal needs at least 2 samples");
    if (!(sample_rate > 0.0)) throw ParseError("sample rate must be positive");
    for (double v : samples)
        if (!std::isfinite(v)) throw NonFiniteInput("non-finite sample");
    return SampledSignal{std::move(samples), sample_rate, std::move(label)};
}

void save_signal_csv(const SampledSignal& sig, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out.precision(17);
    out << "time_s,value\n";
    for (std::size_t n = 0; n < sig.samples.size(); ++n)
        out << n / sig.sample_rate << ',' << sig.samples[n] << '\n';
}

SampledSignal load_signal_csv(const std::string& path, double fallback_rate) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw EmptyFile(path + " is empty");

    bool has_time = line.find("time") != std::string::npos;
    bool header = line.find_first_not_of("0123456789.+-eE, \t\r") != std::string::npos;

    std::vector<double> times, values;
    auto parse_line = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of(" \t\r") == std::string::npos) return;
        std::istringstream ss(s);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("bad numeric cell in " + path + ": " + cell);
            }
        }
        if (row.empty()) return;
        if (row.size() >= 2) {
            times.push_back(row[0]);
            values.push_back(row[1]);
        } else {
            values.push_back(row[0]);
        }
    };

    if (!header) parse_line(line);
    while (std::getline(in, line)) parse_line(line);

    if (values.empty()) throw EmptyFile(path + " has no data rows");

    double rate = fallback_rate;
    if (times.size() == values.size() && times.size() >= 2) {
        double dt = times[1] - times[0];
        if (!(dt > 0.0)) throw NonUniformSampling("non-increasing time column in " + path);
        for (std::size_t i = 1; i + 1 < times.size(); ++i) {
            double d = times[i + 1] - times[i];
            if (std::abs(d - dt) > 1e-6)
                throw NonUniformSampling("jittered time column in " + path);
        }
        rate = 1.0 / dt;
        (void)has_time;
    }
    return make_signal(std::move(values), rate, path);
}

void save_signal_bin(const SampledSignal& sig, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kVersion), 4);
    out.write(reinterpret_cast<const char*>(&sig.sample_rate), 8);
    out.write(reinterpret_cast<const char*>(sig.samples.data()),
              static_cast<std::streamsize>(sig.samples.size() * sizeof(double)));
}

SampledSignal load_signal_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    char magic[4];
    std::uint32_t version = 0;
    double rate = 0.0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&rate), 8);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw ParseError(path + " is not a WSST binary signal");
    if (version != kVersion) throw ParseError("unsupported WSST binary version");

    std::vector<double> samples;
    double v;
    while (in.read(reinterpret_cast<char*>(&v), 8)) samples.push_back(v);
    if (samples.empty()) throw EmptyFile(path + " has no samples");
    return make_signal(std::move(samples), rate, path);
}

}  // namespace wsst
