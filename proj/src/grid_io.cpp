#include "hardy/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hardy {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json grid_spec_to_json(const GridSpec& spec) {
    return json{{"n", spec.dim()},
                {"cells_per_side", spec.cells_per_side()},
                {"h", spec.h()},
                {"origin", spec.dim() == 1 ? json::array({spec.origin()[0]})
                                           : json::array({spec.origin()[0], spec.origin()[1]})}};
}

GridSpec grid_spec_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    Point origin{0.0, 0.0};
    const auto& o = j.at("origin");
    if (!o.is_array() || static_cast<int>(o.size()) != n) throw Error("origin must have n entries");
    for (int a = 0; a < n; ++a) origin[a] = o[a].get<double>();
    return GridSpec(n, j.at("cells_per_side").get<int>(), j.at("h").get<double>(), origin);
}

json to_json(const GridFunction& f) {
    json j = grid_spec_to_json(f.spec());
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    return j;
}

GridFunction grid_function_from_json(const json& j) {
    return GridFunction(grid_spec_from_json(j), j.at("values").get<std::vector<double>>());
}

std::string to_csv(const GridFunction& f) {
    const auto& s = f.spec();
    std::ostringstream os;
    os << "# n=" << s.dim() << ",cells_per_side=" << s.cells_per_side() << ",h=" << format_double(s.h())
       << ",origin=" << format_double(s.origin()[0]);
    if (s.dim() == 2) os << ';' << format_double(s.origin()[1]);
    os << '\n' << (s.dim() == 1 ? "i,value\n" : "i,j,value\n");
    for (std::size_t c = 0; c < f.size(); ++c) {
        CellIndex ci = s.coords(c);
        os << ci[0] << ',';
        if (s.dim() == 2) os << ci[1] << ',';
        os << format_double(f[c]) << '\n';
    }
    return os.str();
}

GridFunction grid_function_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw Error("csv: missing grid header");
    int n = 0, cells = 0;
    double h = 0.0;
    Point origin{0.0, 0.0};
    {
        std::istringstream hs(line.substr(2));
        std::string kv;
        while (std::getline(hs, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error("csv: malformed header");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "n") n = std::stoi(val);
            else if (key == "cells_per_side") cells = std::stoi(val);
            else if (key == "h") h = std::stod(val);
            else if (key == "origin") {
                auto semi = val.find(';');
                origin[0] = std::stod(val.substr(0, semi));
                if (semi != std::string::npos) origin[1] = std::stod(val.substr(semi + 1));
            }
        }
    }
    GridSpec spec(n, cells, h, origin);
    std::getline(is, line);  // column names
    std::vector<double> values(spec.cell_count(), 0.0);
    std::vector<char> seen(spec.cell_count(), 0);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        CellIndex ci{0, 0};
        std::getline(ls, tok, ',');
        ci[0] = std::stoi(tok);
        if (n == 2) {
            std::getline(ls, tok, ',');
            ci[1] = std::stoi(tok);
        }
        std::getline(ls, tok);
        if (!spec.contains(ci)) throw Error("csv: cell index out of range");
        values[spec.flat(ci)] = std::stod(tok);
        seen[spec.flat(ci)] = 1;
    }
    for (char s : seen)
        if (!s) throw Error("csv: missing cells");
    return GridFunction(spec, std::move(values));
}

GridFunction load_grid_function(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    if (path.extension() == ".csv") return grid_function_from_csv(ss.str());
    return grid_function_from_json(json::parse(ss.str()));
}

void save_grid_function(const GridFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    if (path.extension() == ".csv") out << to_csv(f);
    else out << to_json(f).dump() << '\n';
}

}  // namespace hardy
