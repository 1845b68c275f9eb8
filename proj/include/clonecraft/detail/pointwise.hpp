#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "../core.hpp"

// Componentwise application of functions to sets of rows.  The same kernel
// serves relations (rows are m-tuples) and function classes (rows are the
// tables of m-ary functions, since f(g_1..g_n) is f applied to the tables).

namespace clonecraft::detail
{

using Code = std::uint32_t;
using State = std::vector<Code>;

struct RangeHash
{
  template<typename Range>
  std::size_t operator()( Range const& r ) const noexcept
  {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for ( auto v : r )
    {
      h ^= static_cast<std::uint64_t>( v ) + 0x9e3779b97f4a7c15ull;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>( h );
  }
};

using StateSet = std::unordered_set<State, RangeHash>;
using TupleSet = std::unordered_set<Tuple, RangeHash>;

inline std::vector<Tuple> sorted( TupleSet const& set )
{
  std::vector<Tuple> rows( set.begin(), set.end() );
  std::sort( rows.begin(), rows.end() );
  return rows;
}

inline State extend( State const& prefix, Tuple const& row, Code base )
{
  State next( prefix.size() );
  for ( std::size_t i = 0; i < prefix.size(); ++i )
    next[i] = prefix[i] * base + row[i];
  return next;
}

inline Tuple finish( State const& state, Tuple const& table )
{
  Tuple out( state.size() );
  for ( std::size_t i = 0; i < state.size(); ++i )
    out[i] = table[state[i]];
  return out;
}

/// Dedup set of packed codes: a bitmap when the code space is small, a hash
/// set otherwise.  `items` lists the members in insertion order.  Bitmaps are
/// recycled per thread and handed back cleared, so a set costs O(items).
class CodeSet
{
public:
  static constexpr unsigned dense_bits = 26;

  explicit CodeSet( unsigned bits ) : dense_( bits <= dense_bits )
  {
    if ( !dense_ )
      return;
    auto& free = pool();
    if ( !free.empty() )
    {
      bitmap_ = std::move( free.back() );
      free.pop_back();
    }
    auto const words = ( ( std::uint64_t{ 1 } << bits ) + 63 ) / 64;
    if ( bitmap_.size() < words )
      bitmap_.resize( words, 0 );
  }

  CodeSet( CodeSet&& ) = default;
  CodeSet& operator=( CodeSet&& ) = delete;
  CodeSet( CodeSet const& ) = delete;
  CodeSet& operator=( CodeSet const& ) = delete;

  ~CodeSet()
  {
    if ( bitmap_.empty() )
      return;
    for ( auto code : items )
      bitmap_[code >> 6] = 0;
    pool().push_back( std::move( bitmap_ ) );
  }

  void insert( std::uint64_t code )
  {
    if ( dense_ )
    {
      auto& word = bitmap_[code >> 6];
      auto const bit = std::uint64_t{ 1 } << ( code & 63 );
      if ( word & bit )
        return;
      word |= bit;
    }
    else if ( !hashed_.insert( code ).second )
      return;
    items.push_back( code );
  }

  /// Moves the members out; the set must not be used afterwards except for destruction.
  std::vector<std::uint64_t> take()
  {
    for ( auto code : items )
      if ( !bitmap_.empty() )
        bitmap_[code >> 6] = 0;
    return std::move( items );
  }

  std::vector<std::uint64_t> items;

private:
  static std::vector<std::vector<std::uint64_t>>& pool()
  {
    thread_local std::vector<std::vector<std::uint64_t>> free;
    return free;
  }

  bool dense_;
  std::vector<std::uint64_t> bitmap_;
  std::unordered_set<std::uint64_t> hashed_;
};

inline unsigned bit_width_of( std::uint64_t max_value )
{
  unsigned bits = 1;
  while ( bits < 64 && ( max_value >> bits ) != 0 )
    ++bits;
  return bits;
}

/// Packed evaluation of f on rows of a fixed length.  A partial state holds
/// one field per row position; field i after k arguments is the big-endian
/// code of the first k arguments at position i.  Since every field stays
/// below a^n <= 2^width, `state * a + row` extends all fields without carries.
class PackedImage
{
public:
  PackedImage( FiniteFunction const& f, std::size_t length ) : f_( f ), length_( length )
  {
    auto const codes = checked_power( f.dom().value(), f.arity() );
    width_ = codes ? bit_width_of( *codes - 1 ) : 64;
    out_width_ = bit_width_of( f.cod().value() - 1 );
    usable_ = codes && width_ * length_ <= 64 && out_width_ * length_ <= 64;
  }

  bool usable() const noexcept { return usable_; }

  std::uint64_t pack( Tuple const& row ) const
  {
    std::uint64_t code = 0;
    for ( std::size_t i = 0; i < length_; ++i )
      code |= std::uint64_t{ row[i] } << ( width_ * i );
    return code;
  }

  CodeSet step( std::vector<std::uint64_t> const& states, std::vector<std::uint64_t> const& rows ) const
  {
    CodeSet next( width_ * static_cast<unsigned>( length_ ) );
    std::uint64_t const a = f_.dom().value();
    for ( auto s : states )
      for ( auto r : rows )
        next.insert( s * a + r );
    return next;
  }

  /// Last argument step fused with table lookup: images of every `s * a + r`.
  void finish( std::vector<std::uint64_t> const& states, std::vector<std::uint64_t> const& rows, CodeSet& out ) const
  {
    std::uint64_t const a = f_.dom().value();
    auto const mask = width_ == 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << width_ ) - 1;
    auto const& table = f_.table();
    for ( auto s : states )
    {
      for ( auto r : rows )
      {
        auto const full = s * a + r;
        std::uint64_t code = 0;
        for ( std::size_t i = 0; i < length_; ++i )
          code |= std::uint64_t{ table[( full >> ( width_ * i ) ) & mask] } << ( out_width_ * i );
        out.insert( code );
      }
    }
  }

  unsigned out_bits() const noexcept { return out_width_ * static_cast<unsigned>( length_ ); }

  Tuple unpack_output( std::uint64_t code ) const
  {
    Tuple row( length_ );
    auto const mask = ( std::uint64_t{ 1 } << out_width_ ) - 1;
    for ( std::size_t i = 0; i < length_; ++i )
      row[i] = static_cast<Element>( ( code >> ( out_width_ * i ) ) & mask );
    return row;
  }

  std::vector<std::uint64_t> pack_all( std::span<Tuple const> rows ) const
  {
    std::vector<std::uint64_t> out;
    out.reserve( rows.size() );
    for ( auto const& r : rows )
      out.push_back( pack( r ) );
    return out;
  }

private:
  FiniteFunction const& f_;
  std::size_t length_;
  unsigned width_ = 64;
  unsigned out_width_ = 64;
  bool usable_ = false;
};

/// Every f(r_1, ..., r_n) with r_i drawn from `rows` (repetition allowed).
///
/// Argument prefixes are deduplicated position by position, so the cost is
/// bounded by the number of distinct partial evaluations rather than |rows|^n.
inline std::vector<Tuple> image_rows( FiniteFunction const& f, std::span<Tuple const> rows )
{
  if ( rows.empty() )
    return {};
  auto const length = rows.front().size();

  if ( PackedImage packed( f, length ); packed.usable() )
  {
    auto const codes = packed.pack_all( rows );
    std::vector<std::uint64_t> current{ 0 };
    for ( std::size_t k = 1; k < f.arity(); ++k )
      current = packed.step( current, codes ).take();
    CodeSet out( packed.out_bits() );
    packed.finish( current, codes, out );
    std::vector<Tuple> result;
    for ( auto code : out.items )
      result.push_back( packed.unpack_output( code ) );
    std::sort( result.begin(), result.end() );
    return result;
  }

  auto const base = static_cast<Code>( f.dom().value() );
  StateSet current{ State( length, 0 ) };
  for ( std::size_t k = 0; k < f.arity(); ++k )
  {
    StateSet next;
    next.reserve( current.size() * rows.size() );
    for ( auto const& s : current )
      for ( auto const& r : rows )
        next.insert( extend( s, r, base ) );
    current = std::move( next );
  }

  TupleSet out;
  for ( auto const& s : current )
    out.insert( finish( s, f.table() ) );
  return sorted( out );
}

/// Images f(r_1..r_n) where at least one r_i comes from `fresh` and the others
/// come from `known` or `fresh`.
inline void image_rows_touching( FiniteFunction const& f, std::span<Tuple const> known, std::span<Tuple const> fresh, TupleSet& out )
{
  if ( fresh.empty() )
    return;
  auto const length = fresh.front().size();

  if ( PackedImage packed( f, length ); packed.usable() )
  {
    auto const known_codes = packed.pack_all( known );
    auto const fresh_codes = packed.pack_all( fresh );
    auto all_codes = known_codes;
    all_codes.insert( all_codes.end(), fresh_codes.begin(), fresh_codes.end() );

    std::vector<std::uint64_t> untouched{ 0 };
    std::vector<std::uint64_t> touched;
    for ( std::size_t k = 1; k < f.arity(); ++k )
    {
      auto next_touched = packed.step( untouched, fresh_codes );
      for ( auto code : packed.step( touched, all_codes ).items )
        next_touched.insert( code );
      untouched = packed.step( untouched, known_codes ).take();
      touched = next_touched.take();
    }
    CodeSet images( packed.out_bits() );
    packed.finish( untouched, fresh_codes, images );
    packed.finish( touched, all_codes, images );
    for ( auto code : images.items )
      out.insert( packed.unpack_output( code ) );
    return;
  }

  auto const base = static_cast<Code>( f.dom().value() );
  StateSet untouched{ State( length, 0 ) };
  StateSet touched;
  for ( std::size_t k = 0; k < f.arity(); ++k )
  {
    StateSet next_untouched, next_touched;
    for ( auto const& s : untouched )
    {
      for ( auto const& r : known )
        next_untouched.insert( extend( s, r, base ) );
      for ( auto const& r : fresh )
        next_touched.insert( extend( s, r, base ) );
    }
    for ( auto const& s : touched )
    {
      for ( auto const& r : known )
        next_touched.insert( extend( s, r, base ) );
      for ( auto const& r : fresh )
        next_touched.insert( extend( s, r, base ) );
    }
    untouched = std::move( next_untouched );
    touched = std::move( next_touched );
  }
  for ( auto const& s : touched )
    out.insert( finish( s, f.table() ) );
}

/// Least superset of `seed` closed under componentwise application of `ops`.
inline std::vector<Tuple> close_rows( std::span<FiniteFunction const> ops, std::vector<Tuple> seed )
{
  TupleSet all( seed.begin(), seed.end() );
  std::vector<Tuple> known;
  std::vector<Tuple> frontier = sorted( all );

  while ( !frontier.empty() )
  {
    TupleSet produced;
    for ( auto const& op : ops )
      image_rows_touching( op, known, frontier, produced );

    known.insert( known.end(), frontier.begin(), frontier.end() );
    frontier.clear();
    for ( auto& row : produced )
    {
      if ( all.insert( row ).second )
        frontier.push_back( row );
    }
    std::sort( frontier.begin(), frontier.end() );
  }
  return sorted( all );
}

} // namespace clonecraft::detail
