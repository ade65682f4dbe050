#pragma once

#include <string>

namespace uavsim {

/* 6 significant digits via the C locale; what every emitted CSV uses, so
   byte-exact replay does not depend on platform formatting quirks. */
std::string fmt6(double v);

/* Shortest decimal string that parses back to exactly the same double. */
std::string fmt_full(double v);

} // namespace uavsim
