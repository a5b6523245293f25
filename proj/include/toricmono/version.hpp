#ifndef TORICMONO_VERSION_HPP
#define TORICMONO_VERSION_HPP

namespace toricmono {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
