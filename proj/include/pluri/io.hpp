#pragma once

#include <stdexcept>
#include <string>

#include "pluri/algebra.hpp"
#include "pluri/bicomplex.hpp"

namespace pluri {

struct Fan;
struct TCbba;

/* syntax or semantic error with a 1-based location */
struct InputError : std::runtime_error {
    int line, col;
    InputError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
          line(l),
          col(c) {}
};

std::string read_file(const std::string& path);

Bicomplex parse_bicomplex(const std::string& text);
std::string serialize_bicomplex(const Bicomplex& b);

/* validates the result; semantic errors point at the offending generator line */
Algebra parse_algebra(const std::string& text, bool validate = true);
std::string serialize_algebra(const Algebra& a);

Fan parse_fan(const std::string& text);
std::string serialize_fan(const Fan& f);

TCbba parse_tcbba(const std::string& text);
std::string serialize_tcbba(const TCbba& t);

/* what kind of object a file holds, from its header keyword */
std::string detect_kind(const std::string& text);

Algebra load_algebra(const std::string& path);

}  // namespace pluri
