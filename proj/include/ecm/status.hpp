#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ecm {

// Registration levels form a total order used by access checks and rule
// guards: anonymous < reader < editor < administrator.
enum class RegistrationStatus { Anonymous = 0, Reader = 1, Editor = 2, Administrator = 3 };

std::string_view status_name(RegistrationStatus s);
std::optional<RegistrationStatus> parse_status(std::string_view text);

inline bool operator<(RegistrationStatus a, RegistrationStatus b) {
    return static_cast<int>(a) < static_cast<int>(b);
}
inline bool operator<=(RegistrationStatus a, RegistrationStatus b) {
    return static_cast<int>(a) <= static_cast<int>(b);
}
inline bool operator>(RegistrationStatus a, RegistrationStatus b) {
    return static_cast<int>(a) > static_cast<int>(b);
}
inline bool operator>=(RegistrationStatus a, RegistrationStatus b) {
    return static_cast<int>(a) >= static_cast<int>(b);
}

}  // namespace ecm
