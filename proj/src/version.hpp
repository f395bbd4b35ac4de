#ifndef PPMBEAM_VERSION_HPP
#define PPMBEAM_VERSION_HPP

namespace ppmbeam {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
