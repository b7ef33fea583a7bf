#pragma once

#include <string>
#include <string_view>

#include "covercert/core.hpp"
#include "covercert/distortion.hpp"

namespace covercert {

// "R mod D" per line; '#' starts a comment line; blank lines are skipped;
// commas or semicolons also separate classes. R may be negative or
// unreduced. Throws ParseError with the offending line number.
CongruenceSystem parse_system_text(std::string_view text);

// {"classes":[{"r":R,"d":D},...]}; R may also be given as a decimal string.
CongruenceSystem parse_system_json(std::string_view text);

// JSON when the first non-blank character is '{', text otherwise.
CongruenceSystem parse_system(std::string_view text);

std::string emit_system_text(const CongruenceSystem& sys);
std::string emit_system_json(const CongruenceSystem& sys);

std::string certificate_to_json(const Certificate& cert);
std::string certificate_to_text(const Certificate& cert);

}  // namespace covercert
