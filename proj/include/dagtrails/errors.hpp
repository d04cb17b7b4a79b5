#ifndef DAGTRAILS_ERRORS_HPP
#define DAGTRAILS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dagtrails {

using NodeId = int;

enum class errc {
    cycle_detected,
    self_loop,
    duplicate_arc,
    antiparallel_arcs,
    node_out_of_range,
    duplicate_label,
    invalid_query,
    not_activated,
    no_descendant_in_z,
    has_converging_connection,
    not_local,
    parse_error,
    unknown_check,
    unknown_label,
};

const char* errc_name(errc c);

/// Library-wide exception. `witness()` carries a node cycle for
/// cycle_detected and is empty otherwise.
class Error : public std::runtime_error {
public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    Error(errc code, std::string message, std::vector<NodeId> witness)
        : std::runtime_error(std::move(message)), code_(code),
          witness_(std::move(witness)) {}

    errc code() const noexcept { return code_; }
    const std::vector<NodeId>& witness() const noexcept { return witness_; }

private:
    errc code_;
    std::vector<NodeId> witness_;
};

} // namespace dagtrails

#endif
