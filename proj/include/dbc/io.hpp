#pragma once

#include <iosfwd>
#include <string>

#include "dbc/dbscan.hpp"
#include "dbc/types.hpp"

namespace dbc {

enum class InputFormat { csv, whitespace };

// One point per line, comma- or whitespace-separated finite reals; an
// optional header line is detected by a non-numeric first token. The
// dimension is inferred from the first data row; ragged rows or unparsable
// values raise param_error naming the line number.
PointSet read_points(std::istream& in, InputFormat format);
PointSet read_points_file(const std::string& path, InputFormat format);

// shortest decimal representation that round-trips to the same double
std::string format_double(double v);

// one line per point: "index,label,cluster_id" (cluster_id -1 for noise)
void write_labeling(std::ostream& os, const Labeling& lab);

}  // namespace dbc
