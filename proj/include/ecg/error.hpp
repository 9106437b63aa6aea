#ifndef ECG_ERROR_HPP
#define ECG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ecg {

// Precondition violations and bad arguments (unknown vertex, ambient
// mismatch, id collisions, ...). CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant (e.g. a failed postcondition check in the
// exact linear algebra). CLI maps these to exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline void internal_check(bool ok, const char* what) {
    if (!ok) throw InternalError(what);
}

} // namespace ecg

#endif
