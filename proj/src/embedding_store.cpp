#include "sightsee/embedding_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace sightsee {

namespace {

using Kind = EmbeddingFormatError::Kind;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' &&
           line[pos] != '\r') {
      ++pos;
    }
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

bool parse_size(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) {
    throw EmbeddingFormatError(Kind::kMalformedHeader,
                               "embedding dimension must be positive");
  }
}

void EmbeddingTable::add(std::string token, std::vector<double> components) {
  if (components.size() != dimension_) {
    throw EmbeddingFormatError(
        Kind::kDimensionMismatch,
        "token '" + token + "' has " + std::to_string(components.size()) +
            " components, expected " + std::to_string(dimension_));
  }
  if (entries_.count(token) != 0) {
    throw EmbeddingFormatError(Kind::kDuplicateToken,
                               "duplicate token '" + token + "'");
  }
  double norm = euclidean_norm(components);
  if (!(norm > 0.0)) {
    throw EmbeddingFormatError(Kind::kZeroNorm,
                               "token '" + token + "' has a zero-norm vector");
  }
  order_.push_back(token);
  WordVector wv{token, std::move(components), norm};
  entries_.emplace(std::move(token), std::move(wv));
}

const WordVector* EmbeddingTable::find(const std::string& token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

bool EmbeddingTable::operator==(const EmbeddingTable& other) const {
  if (dimension_ != other.dimension_ || order_ != other.order_) return false;
  for (const auto& token : order_) {
    const WordVector* a = find(token);
    const WordVector* b = other.find(token);
    if (b == nullptr || a->components != b->components || a->norm != b->norm) {
      return false;
    }
  }
  return true;
}

EmbeddingTable load_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw EmbeddingFormatError(Kind::kMalformedHeader,
                               "missing '<count> <dim>' header");
  }
  auto header = split_fields(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_size(header[0], count) ||
      !parse_size(header[1], dim) || dim == 0) {
    throw EmbeddingFormatError(Kind::kMalformedHeader,
                               "malformed header line: '" + line + "'");
  }

  EmbeddingTable table(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw EmbeddingFormatError(
          Kind::kDimensionMismatch,
          "line " + std::to_string(line_no) + ": expected " +
              std::to_string(dim) + " components, got " +
              std::to_string(fields.size() - 1));
    }
    std::vector<double> components(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_double(fields[k + 1], components[k])) {
        throw EmbeddingFormatError(
            Kind::kNonNumeric, "line " + std::to_string(line_no) +
                                   ": non-numeric component '" +
                                   std::string(fields[k + 1]) + "'");
      }
    }
    table.add(std::string(fields[0]), std::move(components));
  }
  if (table.size() != count) {
    throw EmbeddingFormatError(
        Kind::kCountMismatch, "header declares " + std::to_string(count) +
                                  " words but file has " +
                                  std::to_string(table.size()));
  }
  return table;
}

EmbeddingTable load_embeddings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path);
  return load_embeddings(in);
}

void save_embeddings(const EmbeddingTable& table, std::ostream& out) {
  out << table.size() << ' ' << table.dimension() << '\n';
  char buf[40];
  for (const auto& token : table.tokens()) {
    out << token;
    for (double c : table.find(token)->components) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), c);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

std::optional<WordVector> lookup(const EmbeddingTable& table,
                                 const std::string& token) {
  const WordVector* wv = table.find(token);
  if (wv == nullptr) return std::nullopt;
  return *wv;
}

double euclidean_norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine: vector lengths differ");
  }
  double nu = euclidean_norm(u);
  double nv = euclidean_norm(v);
  if (!(nu > 0.0) || !(nv > 0.0)) {
    throw std::invalid_argument("cosine: zero-norm vector");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

double cosine(const WordVector& u, const WordVector& v) {
  return cosine(std::span<const double>(u.components),
                std::span<const double>(v.components));
}

}  // namespace sightsee
