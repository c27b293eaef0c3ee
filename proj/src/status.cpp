#include "ecm/status.hpp"

namespace ecm {

std::string_view status_name(RegistrationStatus s) {
    switch (s) {
    case RegistrationStatus::Anonymous: return "anonymous";
    case RegistrationStatus::Reader: return "reader";
    case RegistrationStatus::Editor: return "editor";
    case RegistrationStatus::Administrator: return "administrator";
    }
    return "?";
}

std::optional<RegistrationStatus> parse_status(std::string_view text) {
    if (text == "anonymous") return RegistrationStatus::Anonymous;
    if (text == "reader") return RegistrationStatus::Reader;
    if (text == "editor") return RegistrationStatus::Editor;
    if (text == "administrator") return RegistrationStatus::Administrator;
    return std::nullopt;
}

}  // namespace ecm
