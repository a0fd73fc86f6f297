#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cat/gaussian_mean.hpp"
#include "cat/pmf.hpp"
#include "cat/sep_discrete.hpp"
#include "cat/sep_gaussian.hpp"

namespace cat {

// Newline-delimited decimal text, one probability per line.
DiscretePmf read_pmf(const std::string& path);
void write_pmf(const DiscretePmf& p, const std::string& path);

// Newline-delimited decimals without the pmf normalization check.
std::vector<double> read_doubles(const std::string& path);

// Newline-delimited symbol indices (0-based).
std::vector<std::uint32_t> read_symbols(const std::string& path);
void write_symbols(const std::vector<std::uint32_t>& syms, const std::string& path);

// CSV matrix, one observation per row.
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const Matrix& m, const std::string& path);

// CSV points, one point per row with d columns; returned flat row-major.
std::vector<double> read_points_csv(const std::string& path, std::uint32_t d,
                                    std::size_t* n_points);

// Line-oriented text: first line "tag <tag>", then one member index per line.
DiscreteSepSet read_sep_set(const std::string& path);
void write_sep_set(const DiscreteSepSet& s, const std::string& path);

// Decimal text: line 1 J, line 2 the weights, line 3 the offset.
GaussianHalfspace read_halfspace(const std::string& path);
void write_halfspace(const GaussianHalfspace& hs, const std::string& path);

// Write-to-temp-then-rename so readers never observe torn output.
void atomic_write_text(const std::string& path, const std::string& contents);

std::string format_double(double v);

}  // namespace cat
