#ifndef TORICMONO_BIGINT_HPP
#define TORICMONO_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace toricmono {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= static_cast<unsigned>(i);
  return r;
}

}  // namespace toricmono

#endif
