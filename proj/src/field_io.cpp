#include "regionctl/field_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace regionctl {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void dump_field(const ScalarField& f, const FieldMeta& meta, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    const Grid& g = f.grid();
    out << "# " << meta.name << ',' << g.nx() << ',' << g.ny() << ','
        << format_g17(g.bounds().x_min) << ',' << format_g17(g.bounds().x_max) << ','
        << format_g17(g.bounds().y_min) << ',' << format_g17(g.bounds().y_max) << ',' << meta.tag
        << '\n';
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            if (i) out << ',';
            out << format_g17(f.at(i, j));
        }
        out << '\n';
    }
    if (!out) throw ConfigError("write failure on " + path.string());
}

LoadedField read_field(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string header;
    if (!std::getline(in, header) || header.size() < 2 || header[0] != '#')
        throw ConfigError(path.string() + ": missing field header");

    std::string body = header.substr(1);
    if (!body.empty() && body.front() == ' ') body.erase(0, 1);
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() < 8) throw ConfigError(path.string() + ": malformed field header");

    FieldMeta meta;
    meta.name = parts[0];
    const int nx = std::atoi(parts[1].c_str());
    const int ny = std::atoi(parts[2].c_str());
    Rect b{std::strtod(parts[3].c_str(), nullptr), std::strtod(parts[4].c_str(), nullptr),
           std::strtod(parts[5].c_str(), nullptr), std::strtod(parts[6].c_str(), nullptr)};
    meta.tag = parts[7];
    for (std::size_t k = 8; k < parts.size(); ++k) meta.tag += "," + parts[k];

    Grid g(nx, ny, b);
    ScalarField f(g);
    for (int j = 0; j < ny; ++j) {
        std::string line;
        if (!std::getline(in, line)) throw ConfigError(path.string() + ": truncated payload");
        std::stringstream row(line);
        std::string cell;
        for (int i = 0; i < nx; ++i) {
            if (!std::getline(row, cell, ','))
                throw ConfigError(path.string() + ": short row " + std::to_string(j));
            char* end = nullptr;
            f.at(i, j) = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str())
                throw ConfigError(path.string() + ": bad value in row " + std::to_string(j));
        }
    }
    return {std::move(f), std::move(meta)};
}

}  // namespace regionctl
