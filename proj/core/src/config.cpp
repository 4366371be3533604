#include "htclag/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace htclag {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw std::invalid_argument("config: bad boolean value '" + v + "'");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "case") cfg.test_case = val;
        else if (key == "mesh.file") cfg.mesh_file = val;
        else if (key == "scheme") cfg.scheme = val;
        else if (key == "detector.mode") cfg.detector = val;
        else if (key == "detector.kappa") cfg.kappa = std::stod(val);
        else if (key == "detector.delta") cfg.delta = std::stod(val);
        else if (key == "cfl") cfg.cfl = std::stod(val);
        else if (key == "t_final") cfg.t_final = std::stod(val);
        else if (key == "gamma") cfg.gamma = std::stod(val);
        else if (key == "c_v") cfg.cv = std::stod(val);
        else if (key == "mesh.h") cfg.mesh_h = std::stod(val);
        else if (key == "ecl.guard") cfg.ecl_guard = std::stod(val);
        else if (key == "threads") cfg.threads = std::stoi(val);
        else if (key == "output.dir") cfg.output_dir = val;
        else if (key == "output.times") cfg.output_times = parse_list(val);
        else if (key == "output.vtk") cfg.vtk = parse_bool(val);
        else if (key == "output.csv") cfg.csv = parse_bool(val);
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    if (cfg.scheme != "ecl" && cfg.scheme != "esl" && cfg.scheme != "hybrid")
        throw std::invalid_argument("config: scheme must be ecl, esl or hybrid");
    if (cfg.detector != "apriori" && cfg.detector != "mood" && cfg.detector != "off")
        throw std::invalid_argument("config: detector.mode must be apriori, mood or off");
    if (!(cfg.cfl > 0.0)) throw std::invalid_argument("config: cfl must be positive");
    if (!(cfg.gamma > 1.0)) throw std::invalid_argument("config: gamma must exceed 1");
    if (!(cfg.cv > 0.0)) throw std::invalid_argument("config: c_v must be positive");
    if (cfg.threads < 1) throw std::invalid_argument("config: threads must be at least 1");
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "case = " << cfg.test_case << "\n";
    if (!cfg.mesh_file.empty()) out << "mesh.file = " << cfg.mesh_file << "\n";
    out << "scheme = " << cfg.scheme << "\n";
    out << "detector.mode = " << cfg.detector << "\n";
    out << "detector.kappa = " << cfg.kappa << "\n";
    out << "detector.delta = " << cfg.delta << "\n";
    out << "cfl = " << cfg.cfl << "\n";
    out << "t_final = " << cfg.t_final << "\n";
    out << "gamma = " << cfg.gamma << "\n";
    out << "c_v = " << cfg.cv << "\n";
    out << "mesh.h = " << cfg.mesh_h << "\n";
    out << "ecl.guard = " << cfg.ecl_guard << "\n";
    out << "threads = " << cfg.threads << "\n";
    if (!cfg.output_dir.empty()) out << "output.dir = " << cfg.output_dir << "\n";
    if (!cfg.output_times.empty()) {
        out << "output.times = ";
        for (std::size_t i = 0; i < cfg.output_times.size(); ++i)
            out << (i ? "," : "") << cfg.output_times[i];
        out << "\n";
    }
    out << "output.vtk = " << (cfg.vtk ? "true" : "false") << "\n";
    out << "output.csv = " << (cfg.csv ? "true" : "false") << "\n";
    return out.str();
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_config_file: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

DetectorMode resolve_mode(const RunConfig& cfg) {
    if (cfg.scheme == "ecl") return DetectorMode::AlwaysEcl;
    if (cfg.scheme == "esl") return DetectorMode::AlwaysEsl;
    if (cfg.detector == "apriori") return DetectorMode::APriori;
    if (cfg.detector == "mood") return DetectorMode::Mood;
    return DetectorMode::AlwaysEcl; // hybrid with detection off
}

std::string resolve_output_dir(const RunConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("HTCLAG_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

} // namespace htclag
