#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sigdist/sigma_algebra.hpp"

namespace sigdist {

// A malformed problem file. The message starts with the offending field path.
class ProblemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One σ-algebra as written in a problem file: either its atom blocks or a
/// generating family, each a list of point lists.
struct SigmaSpec {
    enum class Kind { Partition, Generators };

    Kind kind = Kind::Partition;
    std::vector<std::vector<std::size_t>> sets;

    static SigmaSpec from_atoms(const SigmaAlgebra& c);

    friend bool operator==(const SigmaSpec&, const SigmaSpec&) = default;
};

struct ProblemFile {
    std::size_t x_size = 1;
    std::size_t u_size = 1;
    SigmaSpec a;
    SigmaSpec f;
    SigmaSpec g;

    friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

struct Problem {
    SigmaAlgebra a;
    SigmaAlgebra f;
    SigmaAlgebra g;
};

// Throws ProblemError.
ProblemFile parse_problem(std::string_view json_text);
ProblemFile read_problem(const std::string& path);

// Single-line JSON with keys in the order x_size, u_size, A, F, G.
std::string print_problem(const ProblemFile& p);

SigmaAlgebra realize(const SigmaSpec& spec, std::size_t n);
Problem realize(const ProblemFile& p);

} // namespace sigdist
