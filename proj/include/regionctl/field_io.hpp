#pragma once

#include <filesystem>
#include <string>

#include "regionctl/grid.hpp"

namespace regionctl {

struct FieldMeta {
    std::string name;
    std::string tag;  // time-or-iteration tag, e.g. "iter=20" or "t=1"
};

/// Format a double with 17 significant digits (lossless round trip).
std::string format_g17(double v);

/// Writes `# name,nx,ny,xmin,xmax,ymin,ymax,tag` followed by ny lines of nx
/// comma-separated values (row j on line j).
void dump_field(const ScalarField& f, const FieldMeta& meta, const std::filesystem::path& path);

struct LoadedField {
    ScalarField field;
    FieldMeta meta;
};

/// Exact inverse of dump_field.
LoadedField read_field(const std::filesystem::path& path);

}  // namespace regionctl
