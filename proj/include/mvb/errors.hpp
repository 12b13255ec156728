#ifndef MVB_ERRORS_HPP
#define MVB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mvb {

// Base class for everything this library throws.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: unreadable/malformed files, out-of-range options,
// unknown labels. The CLI maps these to exit code 2.
class input_error : public error {
public:
    explicit input_error(const std::string& what) : error(what) {}
};

// Malformed text input, carries file and line context.
class parse_error : public input_error {
public:
    parse_error(const std::string& file, int line, const std::string& what)
        : input_error(file + ":" + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Lookup of a node that is not in the graph.
class lookup_error : public input_error {
public:
    explicit lookup_error(const std::string& label)
        : input_error("unknown node: " + label) {}
};

} // namespace mvb

#endif
