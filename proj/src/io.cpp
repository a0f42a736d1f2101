#include "hypwave/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hypwave {

namespace {
using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.precision(17);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return is;
}

std::vector<std::vector<double>> read_csv_rows(std::istream& is, size_t min_cols) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() < min_cols) throw std::runtime_error("csv: short row");
        rows.push_back(std::move(row));
    }
    return rows;
}
}  // namespace

void write_profile_csv(const std::string& path, const RadialProfile& f) {
    auto os = open_out(path);
    os << "# schema=" << kSchemaVersion << " kind=profile\n";
    for (size_t i = 0; i < f.size(); ++i)
        os << f.s[i] << "," << f.values[i].real() << "," << f.values[i].imag() << "\n";
}

RadialProfile read_profile_csv(const std::string& path) {
    auto is = open_in(path);
    auto rows = read_csv_rows(is, 2);
    std::vector<double> s;
    std::vector<std::complex<double>> v;
    for (auto& r : rows) {
        s.push_back(r[0]);
        v.push_back({r[1], r.size() > 2 ? r[2] : 0.0});
    }
    return RadialProfile(std::move(s), std::move(v));
}

void write_spectrum_csv(const std::string& path, const Spectrum& g) {
    auto os = open_out(path);
    os << "# schema=" << kSchemaVersion << " kind=spectrum\n";
    for (size_t i = 0; i < g.size(); ++i)
        os << g.lam[i] << "," << g.values[i].real() << "," << g.values[i].imag() << "\n";
}

Spectrum read_spectrum_csv(const std::string& path) {
    auto is = open_in(path);
    auto rows = read_csv_rows(is, 2);
    std::vector<double> lam;
    std::vector<std::complex<double>> v;
    for (auto& r : rows) {
        lam.push_back(r[0]);
        v.push_back({r[1], r.size() > 2 ? r[2] : 0.0});
    }
    return Spectrum(std::move(lam), std::move(v));
}

void write_kernel_csv(const std::string& path, const WaveKernel& k) {
    auto os = open_out(path);
    os << "# schema=" << kSchemaVersion << " kind=kernel t=" << k.t
       << " symbol=" << k.symbol.describe() << "\n";
    os << "# s,K,Kprime,reliable\n";
    for (size_t i = 0; i < k.profile.size(); ++i)
        os << k.profile.s[i] << "," << k.profile.values[i].real() << ","
           << k.derivative_profile.values[i].real() << "," << (int)k.reliable[i] << "\n";
}

void write_net_csv(const std::string& path, const Net& net) {
    auto os = open_out(path);
    os << "# schema=" << kSchemaVersion << " kind=net mesh=" << net.mesh
       << " seed=" << net.seed << "\n";
    for (size_t i = 0; i < net.centers.size(); ++i) {
        for (double c : net.centers[i].coords) os << c << ",";
        os << i << "\n";
    }
}

void write_spherical_csv(const std::string& path, const SpaceParams& p,
                         const std::vector<double>& lams, const std::vector<double>& ss) {
    auto os = open_out(path);
    os << "# schema=" << kSchemaVersion << " kind=spherical\n";
    os << "# lambda,s,value,derivative,method\n";
    for (double lam : lams) {
        auto row = spherical_profile(p, Complex(lam, 0.0), ss);
        const char* meth = row.method == SphericalMethod::series ? "series" : "ode";
        for (size_t i = 0; i < ss.size(); ++i)
            os << lam << "," << ss[i] << "," << row.phi[i].real() << ","
               << row.dphi[i].real() << "," << meth << "\n";
    }
}

namespace {
json region_json(const RegionReport& r) {
    return json{{"name", r.name},           {"points", r.points},
                {"excluded", r.excluded},   {"c_star", r.c_star},
                {"c_star_coarse", r.c_star_coarse}, {"stability", r.stability},
                {"pass", r.pass}};
}
}  // namespace

std::string bound_report_json(const BoundReport& rep) {
    json j{{"schema", kSchemaVersion},
           {"check", rep.check},
           {"space", rep.space},
           {"symbol", rep.symbol},
           {"t", rep.t},
           {"pass", rep.pass},
           {"inconclusive", rep.inconclusive},
           {"seed", rep.seed},
           {"grid", rep.grid_note}};
    j["regions"] = json::array();
    for (const auto& r : rep.regions) j["regions"].push_back(region_json(r));
    return j.dump(2);
}

std::string growth_report_json(const GrowthReport& rep) {
    json j{{"schema", kSchemaVersion}, {"check", "growth"},
           {"space", rep.space},       {"symbol", rep.symbol},
           {"t_list", rep.t_list},     {"l1_norms", rep.l1_norms},
           {"h1_uppers", rep.h1_uppers}, {"l1_slopes", rep.l1_slopes},
           {"h1_slopes", rep.h1_slopes}, {"max_ratio", rep.max_ratio},
           {"min_ratio", rep.min_ratio}, {"c34", rep.c34},
           {"c35", rep.c35},           {"pass", rep.pass},
           {"note", rep.note}};
    return j.dump(2);
}

std::string lq_report_json(const LqReport& rep) {
    json j{{"schema", kSchemaVersion},
           {"check", "lq"},
           {"space", rep.space},
           {"symbol", rep.symbol},
           {"q", rep.q},
           {"s_dual", rep.s_dual},
           {"max_ratio", rep.max_ratio},
           {"max_ratio_fine", rep.max_ratio_fine},
           {"max_dual_ratio", rep.max_dual_ratio},
           {"stability", rep.stability},
           {"pass", rep.pass}};
    return j.dump(2);
}

std::string decomposition_json(const AtomicDecomposition& dec) {
    json j{{"schema", kSchemaVersion},
           {"total", dec.total},
           {"reconstruction_l2_error", dec.reconstruction_l2_error},
           {"input_l2_norm", dec.input_l2_norm}};
    j["terms"] = json::array();
    for (const auto& t : dec.terms) {
        json term{{"c", t.coefficient},
                  {"radius", t.atom.radius},
                  {"kind", t.atom.kind == AtomKind::standard ? "standard" : "global"}};
        if (t.atom.center.has_value())
            term["center"] = t.atom.center->coords;
        else
            term["center"] = "origin";
        j["terms"].push_back(term);
    }
    return j.dump(2);
}

SpaceParams read_space_json(const std::string& path) {
    auto is = open_in(path);
    json j;
    is >> j;
    return SpaceParams::make(j.at("m1").get<int>(), j.at("m2").get<int>());
}

SpaceParams parse_space(const std::string& text) {
    int m1 = -1, m2 = -1;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("space: want m1=..,m2=..");
        const std::string key = part.substr(0, eq);
        const int val = std::stoi(part.substr(eq + 1));
        if (key == "m1") m1 = val;
        else if (key == "m2") m2 = val;
        else throw std::invalid_argument("space: unknown key " + key);
    }
    if (m1 < 0 || m2 < 0) throw std::invalid_argument("space: need both m1 and m2");
    return SpaceParams::make(m1, m2);
}

void write_text(const std::string& path, const std::string& text) {
    auto os = open_out(path);
    os << text;
}

}  // namespace hypwave
