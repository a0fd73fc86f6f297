#include "cat/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cat {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open for reading: " + path);
  return f;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream f = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    f << contents;
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

DiscretePmf read_pmf(const std::string& path) {
  std::vector<double> probs;
  for (const std::string& line : read_lines(path)) probs.push_back(std::stod(line));
  return DiscretePmf(std::move(probs));
}

void write_pmf(const DiscretePmf& p, const std::string& path) {
  std::ostringstream out;
  for (double v : p.probs()) out << format_double(v) << '\n';
  atomic_write_text(path, out.str());
}

std::vector<double> read_doubles(const std::string& path) {
  std::vector<double> vals;
  for (const std::string& line : read_lines(path)) vals.push_back(std::stod(line));
  return vals;
}

std::vector<std::uint32_t> read_symbols(const std::string& path) {
  std::vector<std::uint32_t> syms;
  for (const std::string& line : read_lines(path))
    syms.push_back(static_cast<std::uint32_t>(std::stoul(line)));
  return syms;
}

void write_symbols(const std::vector<std::uint32_t>& syms,
                   const std::string& path) {
  std::ostringstream out;
  for (std::uint32_t s : syms) out << s << '\n';
  atomic_write_text(path, out.str());
}

Matrix read_matrix_csv(const std::string& path) {
  std::vector<std::vector<double>> rows;
  for (const std::string& line : read_lines(path)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("csv: ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("csv: empty file " + path);
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) out << ',';
      out << format_double(m.at(r, c));
    }
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

std::vector<double> read_points_csv(const std::string& path, std::uint32_t d,
                                    std::size_t* n_points) {
  Matrix m = read_matrix_csv(path);
  if (m.cols != d)
    throw std::invalid_argument("points: expected " + std::to_string(d) +
                                " columns in " + path);
  *n_points = m.rows;
  return std::move(m.data);
}

DiscreteSepSet read_sep_set(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty() || lines.front().rfind("tag ", 0) != 0)
    throw std::invalid_argument("sep set file must start with a tag line: " + path);
  DiscreteSepSet s;
  std::string tag = lines.front().substr(4);
  if (tag == "half") s.tag = DiscreteSepSet::Tag::Half;
  else if (tag == "greater") s.tag = DiscreteSepSet::Tag::Greater;
  else if (tag == "less") s.tag = DiscreteSepSet::Tag::Less;
  else s.tag = DiscreteSepSet::Tag::BestOfLogK;
  for (std::size_t i = 1; i < lines.size(); ++i)
    s.members.push_back(static_cast<std::uint32_t>(std::stoul(lines[i])));
  return s;
}

void write_sep_set(const DiscreteSepSet& s, const std::string& path) {
  std::ostringstream out;
  out << "tag " << s.tag_string() << '\n';
  for (std::uint32_t m : s.members) out << m << '\n';
  atomic_write_text(path, out.str());
}

GaussianHalfspace read_halfspace(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.size() != 3)
    throw std::invalid_argument("halfspace file must have 3 lines: " + path);
  GaussianHalfspace hs;
  hs.truncation = static_cast<std::uint32_t>(std::stoul(lines[0]));
  std::stringstream ss(lines[1]);
  double w;
  while (ss >> w) hs.weights.push_back(w);
  if (hs.weights.size() != hs.truncation)
    throw std::invalid_argument("halfspace: weight count != J in " + path);
  hs.offset = std::stod(lines[2]);
  hs.degenerate = true;
  for (double v : hs.weights)
    if (v != 0.0) hs.degenerate = false;
  return hs;
}

void write_halfspace(const GaussianHalfspace& hs, const std::string& path) {
  std::ostringstream out;
  out << hs.truncation << '\n';
  for (std::size_t j = 0; j < hs.weights.size(); ++j) {
    if (j) out << ' ';
    out << format_double(hs.weights[j]);
  }
  out << '\n' << format_double(hs.offset) << '\n';
  atomic_write_text(path, out.str());
}

}  // namespace cat
