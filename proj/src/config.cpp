#include "snsqkd/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace snsqkd {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::domain_error("invalid numeric value for " + key + ": " + v);
    }
}

int parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw std::domain_error("invalid integer value for " + key + ": " + v);
    }
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::domain_error("invalid boolean value for " + key + ": " + v);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

// "a,b,c" or "lo:hi:step" (inclusive endpoints up to rounding).
std::vector<double> parse_distance_list(const std::string& v,
                                        const std::string& key) {
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
        const auto parts = split(v, ':');
        if (parts.size() != 3)
            throw std::domain_error(key + " range must be lo:hi:step");
        const double lo = parse_double(parts[0], key);
        const double hi = parse_double(parts[1], key);
        const double step = parse_double(parts[2], key);
        if (!(step > 0.0) || hi < lo)
            throw std::domain_error(key + " range must have step > 0, hi >= lo");
        for (double x = lo; x <= hi + 1e-9 * step; x += step)
            out.push_back(x);
        return out;
    }
    for (const auto& part : split(v, ','))
        if (!part.empty()) out.push_back(parse_double(part, key));
    return out;
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
    std::vector<int> out;
    for (const auto& part : split(v, ','))
        if (!part.empty()) out.push_back(parse_int(part, key));
    return out;
}

void validate_mode_name(const std::string& m) {
    if (m != "3int" && m != "4int")
        throw std::domain_error("mode must be 3int or 4int, got: " + m);
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

ChannelParams RunConfig::channel(double length_km) const {
    ChannelParams ch;
    ch.length_km = length_km;
    ch.alpha_db_per_km = alpha;
    ch.eta_d = eta_d;
    ch.p_d = p_d;
    ch.e_d = e_d;
    return ch;
}

ProtocolParams RunConfig::protocol() const {
    return ProtocolParams{n_phases, mu_x, mu_y, mu_z, epsilon, f};
}

OptimizationSpec RunConfig::optimization(const std::string& mode_name,
                                         int phases) const {
    validate_mode_name(mode_name);
    OptimizationSpec spec;
    spec.mode =
        mode_name == "3int" ? Mode::three_intensity : Mode::four_intensity;
    spec.n_phases = phases;
    spec.f = f;
    spec.mu_x = {0.001, mu_x_max};
    spec.mu_y = {0.002, mu_y_max};
    spec.mu_z = {mu_z_min, mu_z_max};
    spec.epsilon = {epsilon_min, epsilon_max};
    spec.coarse_steps = coarse_steps;
    spec.rate_rel_tol = rate_rel_tol;
    spec.policy = policy();
    return spec;
}

SeriesPolicy RunConfig::policy() const {
    return SeriesPolicy{series_rel_tol, series_k_max};
}

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "p_d") cfg.p_d = parse_double(value, key);
    else if (key == "e_d") cfg.e_d = parse_double(value, key);
    else if (key == "eta_d") cfg.eta_d = parse_double(value, key);
    else if (key == "f") cfg.f = parse_double(value, key);
    else if (key == "alpha") cfg.alpha = parse_double(value, key);
    else if (key == "n_phases") cfg.n_phases = parse_int(value, key);
    else if (key == "mode") {
        validate_mode_name(value);
        cfg.mode = value;
    } else if (key == "distance") cfg.distance = parse_double(value, key);
    else if (key == "distances")
        cfg.distances = parse_distance_list(value, key);
    else if (key == "phases_list") cfg.phases_list = parse_int_list(value, key);
    else if (key == "modes") {
        cfg.modes_list = split(value, ',');
        for (const auto& m : cfg.modes_list) validate_mode_name(m);
    } else if (key == "mu_x") cfg.mu_x = parse_double(value, key);
    else if (key == "mu_y") cfg.mu_y = parse_double(value, key);
    else if (key == "mu_z") cfg.mu_z = parse_double(value, key);
    else if (key == "epsilon") cfg.epsilon = parse_double(value, key);
    else if (key == "out") cfg.out = value;
    else if (key == "plob_include_detector")
        cfg.plob_include_detector = parse_bool(value, key);
    else if (key == "series_rel_tol")
        cfg.series_rel_tol = parse_double(value, key);
    else if (key == "series_k_max") cfg.series_k_max = parse_int(value, key);
    else if (key == "mu_x_max") cfg.mu_x_max = parse_double(value, key);
    else if (key == "mu_y_max") cfg.mu_y_max = parse_double(value, key);
    else if (key == "mu_z_min") cfg.mu_z_min = parse_double(value, key);
    else if (key == "mu_z_max") cfg.mu_z_max = parse_double(value, key);
    else if (key == "epsilon_min") cfg.epsilon_min = parse_double(value, key);
    else if (key == "epsilon_max") cfg.epsilon_max = parse_double(value, key);
    else if (key == "coarse_steps") cfg.coarse_steps = parse_int(value, key);
    else if (key == "rate_rel_tol")
        cfg.rate_rel_tol = parse_double(value, key);
    else if (key == "verify_distances")
        cfg.verify_distances = parse_distance_list(value, key);
    else if (key == "verify_phases")
        cfg.verify_phases = parse_int_list(value, key);
    else if (key == "fock_n_max") cfg.fock_n_max = parse_int(value, key);
    else if (key == "verify_lp") cfg.verify_lp = parse_bool(value, key);
    else throw std::domain_error("unknown config key: " + key);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("config line " + std::to_string(lineno) +
                                    " is not key=value: " + line);
        apply_config_entry(cfg, trim(line.substr(0, eq)),
                           trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::string csv_header() {
    return "L_km,N,mode,mu_x,mu_y,mu_z,epsilon,s01_L,s10_L,eph_U,S_z,E_z,R,"
           "plob";
}

std::string format_csv_row(const CsvRow& row) {
    std::string s;
    s += fmt12(row.length_km);
    s += ',';
    s += std::to_string(row.n_phases);
    s += ',';
    s += row.mode;
    for (double v : {row.params.mu_x, row.params.mu_y, row.params.mu_z,
                     row.params.epsilon, row.bounds.s01_l, row.bounds.s10_l,
                     row.bounds.eph_u, row.s_z, row.e_z, row.rate, row.plob}) {
        s += ',';
        s += fmt12(v);
    }
    return s;
}

}  // namespace snsqkd
