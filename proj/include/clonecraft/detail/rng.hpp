#pragma once

#include <cstdint>
#include <random>

namespace clonecraft::detail
{

/// Seeded generator whose output is identical on every platform
/// (std::uniform_int_distribution is implementation-defined, so it is avoided).
class Rng
{
public:
  explicit Rng( std::uint64_t seed ) : engine_( seed ) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound).
  std::uint64_t below( std::uint64_t bound )
  {
    if ( bound <= 1 )
      return 0;
    auto const limit = std::uint64_t( -1 ) - std::uint64_t( -1 ) % bound;
    std::uint64_t x;
    do
    {
      x = engine_();
    } while ( x >= limit );
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between( std::uint64_t lo, std::uint64_t hi ) { return lo + below( hi - lo + 1 ); }

  bool coin() { return ( engine_() >> 63 ) != 0; }

private:
  std::mt19937_64 engine_;
};

} // namespace clonecraft::detail
