#ifndef WITTENLAB_VERSION_HPP
#define WITTENLAB_VERSION_HPP

namespace wittenlab {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
