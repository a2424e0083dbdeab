#ifndef WITTLAB_ERROR_HPP
#define WITTLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wittlab {

enum class errc {
    mixed_rings,
    level_mismatch,
    level_too_small,
    not_a_unit,
    not_divisible,
    not_integer,
    not_composable,
    char_mismatch,
    ring_too_large,
    not_p_nilpotent,
    not_special_unit,
    not_in_kernel,
    truncated,
    no_solution,
    non_unique,
    not_eigenclass,
    config_invalid,
    cap_exceeded,
    parse_error,
    inconsistent,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

} // namespace wittlab

#endif
