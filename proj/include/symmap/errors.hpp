#pragma once

#include <stdexcept>
#include <string>

namespace symmap {

// Bad arguments or malformed data handed to a library call.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A chip whose symmetry description does not hold up (e.g. a generating set
// that fails verification).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The circuit's interaction graph has no embedding in the coupling graph.
class does_not_fit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace symmap
