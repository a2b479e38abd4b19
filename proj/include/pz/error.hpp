#pragma once

#include <stdexcept>
#include <string>

namespace pz {

enum class Errc {
  parse,                    // malformed input text or document
  domain,                   // argument outside an operation's domain
  invalid_form,             // all coefficients zero, bad multiplicity
  dimension_mismatch,
  degenerate_lattice,       // value group of rank < 2 where rank 2 is required
  not_in_lattice,
  non_integer_index,
  degenerate_parallelogram,
  im_t_zero,
  nonpositive_tolerance,
  index_obstruction,        // corrector cannot be built: index is nonzero
  path_through_zero,
  non_integer_result,
  invalid_transform,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse: return "parse";
    case Errc::domain: return "domain";
    case Errc::invalid_form: return "invalid_form";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::degenerate_lattice: return "degenerate_lattice";
    case Errc::not_in_lattice: return "not_in_lattice";
    case Errc::non_integer_index: return "non_integer_index";
    case Errc::degenerate_parallelogram: return "degenerate_parallelogram";
    case Errc::im_t_zero: return "im_t_zero";
    case Errc::nonpositive_tolerance: return "nonpositive_tolerance";
    case Errc::index_obstruction: return "index_obstruction";
    case Errc::path_through_zero: return "path_through_zero";
    case Errc::non_integer_result: return "non_integer_result";
    case Errc::invalid_transform: return "invalid_transform";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pz
