#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace permsym {

/// Exact group orders; 48! does not fit in 64 bits.
using Natural = boost::multiprecision::cpp_int;

}  // namespace permsym
