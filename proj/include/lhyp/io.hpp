#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lhyp/catalog.hpp"
#include "lhyp/completion.hpp"
#include "lhyp/geodspace.hpp"
#include "lhyp/isometry.hpp"
#include "lhyp/lspace.hpp"

namespace lhyp {

// All readers throw InputError with a line number on malformed input.
// '#' starts a comment; tokens are whitespace separated.

// lambda Z^n | Q^n / points k labels... / k rows of k entries
FiniteLambdaSpace read_lms(std::istream& in);
FiniteLambdaSpace read_lms_file(const std::string& path);
void write_lms(std::ostream& out, const FiniteLambdaSpace& X);

// graph k / edge lines "u v"
GeodesicGraph read_gg(std::istream& in);
GeodesicGraph read_gg_file(const std::string& path);
void write_gg(std::ostream& out, const GeodesicGraph& G);

struct GroupSpec {
  GroupHandle group;
  std::vector<Word> gens;
};
// free k | cyclic k | finite k + table | product a b | freeprod a b; optional "gens ..."
// nested file names are relative to the including file
GroupSpec read_grp_file(const std::string& path);
GroupSpec read_grp(std::istream& in, const std::string& base_dir);

// group <file> / optional "lambda Z^n" and "radius r" / lines "element value"
LengthTable read_len_file(const std::string& path);
void write_len(std::ostream& out, const LengthTable& l, const std::string& group_file);

Perm read_perm(std::istream& in);
Perm read_perm_file(const std::string& path);

struct CgCertificate {
  bool geodesic = true;
  std::string delta_out;  // rendered, with "exact" or "bound"
  std::string delta_bound;
  std::string H, B;       // empty for gamma1
};
void write_cg(std::ostream& out, const CompletionGraph& g, const CgCertificate& cert);

std::string read_file(const std::string& path);
// FNV-1a 64, hex
std::string digest(const std::string& bytes);

}  // namespace lhyp
