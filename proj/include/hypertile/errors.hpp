#pragma once

#include <stdexcept>
#include <string>

namespace hypertile {

// Wrong set size handed to a degree/link/neighbourhood primitive.
struct arity_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// |F| does not divide the number of vertices to tile.
struct divisibility_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A generator or engine precondition failed (named in the message).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Instance exceeds a configured resource cap.
struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hypergraph text-format errors, one kind per malformation.
class parse_error : public std::runtime_error {
public:
    enum class kind { bad_header, bad_arity, duplicate_edge, vertex_out_of_range };

    parse_error(kind which, std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          which_(which),
          line_(line) {}

    kind which() const { return which_; }
    std::size_t line() const { return line_; }

private:
    kind which_;
    std::size_t line_;
};

} // namespace hypertile
