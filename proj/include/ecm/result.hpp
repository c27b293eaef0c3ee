#pragma once

#include <cassert>
#include <utility>
#include <variant>

namespace ecm {

// Minimal value-or-error carrier used across the engine API.
template <typename T, typename E>
class Result {
public:
    Result(T value) : repr_(std::in_place_index<0>, std::move(value)) {}
    Result(E error) : repr_(std::in_place_index<1>, std::move(error)) {}

    bool ok() const { return repr_.index() == 0; }
    explicit operator bool() const { return ok(); }

    T& value() {
        assert(ok());
        return std::get<0>(repr_);
    }
    const T& value() const {
        assert(ok());
        return std::get<0>(repr_);
    }
    E& error() {
        assert(!ok());
        return std::get<1>(repr_);
    }
    const E& error() const {
        assert(!ok());
        return std::get<1>(repr_);
    }

private:
    std::variant<T, E> repr_;
};

}  // namespace ecm
