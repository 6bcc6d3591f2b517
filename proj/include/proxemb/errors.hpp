#pragma once
#include <stdexcept>
#include <string>

namespace proxemb {

// bad or inconsistent input: files, shapes, parameter domains (cli exit 2)
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// numerical failure: singular systems, diverging series (cli exit 3)
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace proxemb
