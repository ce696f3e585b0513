#include "causal_sep/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace causal_sep {

namespace {

using json = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

template <typename T>
T required(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string matrix_to_json(const DensityMatrix& rho) {
  json entries = json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  json doc = {{"schema", kSchema},
              {"D", rho.dim()},
              {"N", rho.parties()},
              {"normalized", rho.normalized()},
              {"entries", std::move(entries)}};
  return doc.dump() + "\n";
}

DensityMatrix matrix_from_json(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    throw ParseError("malformed JSON", line, column);
  }
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  if (auto it = doc.find("schema"); it != doc.end() && *it != kSchema) {
    throw ParseError("unsupported schema " + it->dump());
  }

  const int dim = required<int>(doc, "D");
  const int parties = required<int>(doc, "N");
  const bool normalized = required<bool>(doc, "normalized");
  const Eigen::Index n = state_dimension(dim, parties, options.dimension_cap);

  const auto it = doc.find("entries");
  if (it == doc.end() || !it->is_array()) throw ParseError("missing array field 'entries'");
  const json& entries = *it;
  if (static_cast<Eigen::Index>(entries.size()) != n * n) {
    throw ParseError("'entries' has " + std::to_string(entries.size()) + " elements, expected " +
                     std::to_string(n * n));
  }

  DensityMatrix::Matrix m(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    const json& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    m(k / n, k % n) = {e[0].get<double>(), e[1].get<double>()};
  }
  DensityMatrix rho(dim, parties, std::move(m), normalized, options.dimension_cap);
  if (options.strict) require_physical(rho, options.tolerance);
  return rho;
}

void save_matrix(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << matrix_to_json(rho);
  if (!out) throw IoError("write failed for " + path.string());
}

DensityMatrix load_matrix(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return matrix_from_json(buf.str(), options);
}

}  // namespace causal_sep
