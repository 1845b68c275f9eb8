#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

/*!
  \file core.hpp
  \brief Finite-domain kernel: points, function tables, relations and classes.

  Elements of a domain of size `a` are the integers `0 .. a-1`.  A point of
  length `n` is encoded big-endian: the first coordinate is the most
  significant digit.  Function tables are indexed by that encoding, so the
  table of binary conjunction over {0,1} reads "0001".
*/

namespace clonecraft
{

using Element = std::uint8_t;
using Tuple = std::vector<Element>;

/// Upper bound on the number of entries in any tabulated object.
inline constexpr std::uint64_t max_table_entries = std::uint64_t{ 1 } << 24;

/// `base^exponent`, or nothing on 64-bit overflow.
inline std::optional<std::uint64_t> checked_power( std::uint64_t base, std::size_t exponent )
{
  std::uint64_t result = 1;
  for ( std::size_t i = 0; i < exponent; ++i )
  {
    if ( base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base )
    {
      return std::nullopt;
    }
    result *= base;
  }
  return result;
}

/// Number of elements of a finite base set.
class DomainSize
{
public:
  static constexpr std::size_t max_size = std::size_t{ std::numeric_limits<Element>::max() } + 1;

  constexpr DomainSize() = default;

  explicit DomainSize( std::size_t size ) : size_( size )
  {
    if ( size == 0 || size > max_size )
    {
      throw ShapeError( "domain size must lie in 1.." + std::to_string( max_size ) + ", got " + std::to_string( size ) );
    }
  }

  constexpr std::size_t value() const noexcept { return size_; }
  constexpr bool contains( std::size_t element ) const noexcept { return element < size_; }

  friend constexpr auto operator<=>( DomainSize, DomainSize ) = default;

private:
  std::size_t size_ = 1;
};

/// Number of points of `base^arity`, rejecting anything above the table limit.
inline std::size_t table_size( DomainSize base, std::size_t arity )
{
  auto const size = checked_power( base.value(), arity );
  if ( !size || *size > max_table_entries )
  {
    throw ShapeError( "table of " + std::to_string( base.value() ) + "^" + std::to_string( arity ) + " entries exceeds the table limit" );
  }
  return static_cast<std::size_t>( *size );
}

/// An m-tuple over a domain, read as the map m -> A.
class Point
{
public:
  Point( Tuple entries, DomainSize base ) : entries_( std::move( entries ) ), base_( base )
  {
    if ( entries_.empty() )
    {
      throw ShapeError( "point must have at least one coordinate" );
    }
    for ( auto e : entries_ )
    {
      if ( !base_.contains( e ) )
      {
        throw ShapeError( "point entry " + std::to_string( e ) + " outside domain of size " + std::to_string( base_.value() ) );
      }
    }
  }

  Tuple const& entries() const noexcept { return entries_; }
  std::size_t arity() const noexcept { return entries_.size(); }
  DomainSize base() const noexcept { return base_; }
  Element operator[]( std::size_t i ) const { return entries_[i]; }

  friend bool operator==( Point const&, Point const& ) = default;

private:
  Tuple entries_;
  DomainSize base_;
};

namespace detail
{

inline std::uint64_t encode( std::span<Element const> entries, std::size_t base ) noexcept
{
  std::uint64_t index = 0;
  for ( auto e : entries )
  {
    index = index * base + e;
  }
  return index;
}

inline void decode_into( std::uint64_t index, std::size_t base, std::span<Element> out ) noexcept
{
  for ( auto i = out.size(); i-- > 0; )
  {
    out[i] = static_cast<Element>( index % base );
    index /= base;
  }
}

} // namespace detail

/// Big-endian mixed-radix value of a point.
inline std::uint64_t encode_point( Point const& p )
{
  if ( !checked_power( p.base().value(), p.arity() ) )
  {
    throw RangeError( "point of arity " + std::to_string( p.arity() ) + " is not encodable in 64 bits" );
  }
  return detail::encode( p.entries(), p.base().value() );
}

inline Point decode_point( std::uint64_t index, std::size_t arity, DomainSize base )
{
  if ( arity == 0 )
  {
    throw ShapeError( "arity must be positive" );
  }
  auto const bound = checked_power( base.value(), arity );
  if ( bound && index >= *bound )
  {
    throw RangeError( "index " + std::to_string( index ) + " out of range for " + std::to_string( base.value() ) + "^" + std::to_string( arity ) );
  }
  Tuple entries( arity );
  detail::decode_into( index, base.value(), entries );
  return Point( std::move( entries ), base );
}

/// An n-ary map A^n -> B stored as a flat table.
class FiniteFunction
{
public:
  FiniteFunction( std::size_t arity, DomainSize dom, DomainSize cod, Tuple table )
      : arity_( arity ), dom_( dom ), cod_( cod ), table_( std::move( table ) )
  {
    if ( arity_ == 0 )
    {
      throw ShapeError( "function arity must be positive" );
    }
    auto const expected = table_size( dom_, arity_ );
    if ( table_.size() != expected )
    {
      throw ShapeError( "table length " + std::to_string( table_.size() ) + " != " + std::to_string( expected ) );
    }
    for ( auto v : table_ )
    {
      if ( !cod_.contains( v ) )
      {
        throw ShapeError( "table entry " + std::to_string( v ) + " outside codomain of size " + std::to_string( cod_.value() ) );
      }
    }
  }

  /// Tabulates `fn(args)` for every point `args` of `dom^arity`.
  template<typename Fn>
  static FiniteFunction tabulate( std::size_t arity, DomainSize dom, DomainSize cod, Fn&& fn )
  {
    auto const size = table_size( dom, arity );
    Tuple table( size );
    Tuple args( arity );
    for ( std::size_t i = 0; i < size; ++i )
    {
      detail::decode_into( i, dom.value(), args );
      table[i] = static_cast<Element>( fn( std::span<Element const>( args ) ) );
    }
    return FiniteFunction( arity, dom, cod, std::move( table ) );
  }

  std::size_t arity() const noexcept { return arity_; }
  DomainSize dom() const noexcept { return dom_; }
  DomainSize cod() const noexcept { return cod_; }
  Tuple const& table() const noexcept { return table_; }

  bool is_endofunction() const noexcept { return dom_ == cod_; }

  /// Canonical order: arity first, then the table read as a word.
  friend auto operator<=>( FiniteFunction const& a, FiniteFunction const& b )
  {
    if ( auto c = a.arity_ <=> b.arity_; c != 0 )
      return c;
    if ( auto c = a.table_ <=> b.table_; c != 0 )
      return c;
    if ( auto c = a.dom_ <=> b.dom_; c != 0 )
      return c;
    return a.cod_ <=> b.cod_;
  }
  friend bool operator==( FiniteFunction const&, FiniteFunction const& ) = default;

private:
  std::size_t arity_;
  DomainSize dom_;
  DomainSize cod_;
  Tuple table_;
};

inline Element apply( FiniteFunction const& f, Point const& args )
{
  if ( args.arity() != f.arity() || args.base() != f.dom() )
  {
    throw ShapeError( "argument of arity " + std::to_string( args.arity() ) + " does not fit a function of arity " + std::to_string( f.arity() ) );
  }
  return f.table()[detail::encode( args.entries(), f.dom().value() )];
}

/// Applies `f` to the rows `r_1..r_n`, coordinate by coordinate.
inline Point apply_componentwise( FiniteFunction const& f, std::span<Point const> rows )
{
  if ( rows.size() != f.arity() )
  {
    throw ShapeError( "expected " + std::to_string( f.arity() ) + " rows, got " + std::to_string( rows.size() ) );
  }
  auto const length = rows.front().arity();
  for ( auto const& r : rows )
  {
    if ( r.arity() != length || r.base() != f.dom() )
    {
      throw ShapeError( "rows must share length and the function domain" );
    }
  }
  Tuple result( length );
  Tuple args( f.arity() );
  for ( std::size_t i = 0; i < length; ++i )
  {
    for ( std::size_t k = 0; k < rows.size(); ++k )
    {
      args[k] = rows[k][i];
    }
    result[i] = f.table()[detail::encode( args, f.dom().value() )];
  }
  return Point( std::move( result ), f.cod() );
}

/// An m-ary relation: a set of m-tuples kept sorted by their encoding.
class Relation
{
public:
  Relation( std::size_t arity, DomainSize dom, std::vector<Tuple> rows = {} )
      : arity_( arity ), dom_( dom ), rows_( std::move( rows ) )
  {
    if ( arity_ == 0 )
    {
      throw ShapeError( "relation arity must be positive" );
    }
    for ( auto const& r : rows_ )
    {
      if ( r.size() != arity_ )
      {
        throw ShapeError( "tuple of length " + std::to_string( r.size() ) + " in relation of arity " + std::to_string( arity_ ) );
      }
      for ( auto e : r )
      {
        if ( !dom_.contains( e ) )
        {
          throw ShapeError( "tuple entry " + std::to_string( e ) + " outside domain of size " + std::to_string( dom_.value() ) );
        }
      }
    }
    std::sort( rows_.begin(), rows_.end() );
    rows_.erase( std::unique( rows_.begin(), rows_.end() ), rows_.end() );
  }

  static Relation from_points( std::size_t arity, DomainSize dom, std::span<Point const> points )
  {
    std::vector<Tuple> rows;
    rows.reserve( points.size() );
    for ( auto const& p : points )
    {
      if ( p.base() != dom )
      {
        throw ShapeError( "point base differs from relation domain" );
      }
      rows.push_back( p.entries() );
    }
    return Relation( arity, dom, std::move( rows ) );
  }

  static Relation full( std::size_t arity, DomainSize dom )
  {
    auto const size = table_size( dom, arity );
    std::vector<Tuple> rows( size, Tuple( arity ) );
    for ( std::size_t i = 0; i < size; ++i )
    {
      detail::decode_into( i, dom.value(), rows[i] );
    }
    return Relation( arity, dom, std::move( rows ) );
  }

  std::size_t arity() const noexcept { return arity_; }
  DomainSize dom() const noexcept { return dom_; }
  std::vector<Tuple> const& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  bool contains( std::span<Element const> tuple ) const
  {
    return std::binary_search( rows_.begin(), rows_.end(), tuple,
                               []( auto const& a, auto const& b ) { return std::lexicographical_compare( a.begin(), a.end(), b.begin(), b.end() ); } );
  }
  bool contains( Point const& p ) const { return p.base() == dom_ && contains( std::span<Element const>( p.entries() ) ); }

  /// Inclusion; relations of different arity or domain are never included.
  bool is_subset_of( Relation const& other ) const
  {
    return arity_ == other.arity_ && dom_ == other.dom_ &&
           std::includes( other.rows_.begin(), other.rows_.end(), rows_.begin(), rows_.end() );
  }

  friend auto operator<=>( Relation const& a, Relation const& b )
  {
    if ( auto c = a.arity_ <=> b.arity_; c != 0 )
      return c;
    if ( auto c = a.dom_ <=> b.dom_; c != 0 )
      return c;
    return a.rows_ <=> b.rows_;
  }
  friend bool operator==( Relation const&, Relation const& ) = default;

private:
  std::size_t arity_;
  DomainSize dom_;
  std::vector<Tuple> rows_;
};

inline void require_same_shape( Relation const& a, Relation const& b )
{
  if ( a.dom() != b.dom() )
    throw DomainMismatch( "relations over different domains" );
  if ( a.arity() != b.arity() )
    throw ShapeError( "relations of different arity" );
}

inline Relation intersection( Relation const& a, Relation const& b )
{
  require_same_shape( a, b );
  std::vector<Tuple> rows;
  std::set_intersection( a.rows().begin(), a.rows().end(), b.rows().begin(), b.rows().end(), std::back_inserter( rows ) );
  return Relation( a.arity(), a.dom(), std::move( rows ) );
}

inline Relation unite( Relation const& a, Relation const& b )
{
  require_same_shape( a, b );
  std::vector<Tuple> rows;
  std::set_union( a.rows().begin(), a.rows().end(), b.rows().begin(), b.rows().end(), std::back_inserter( rows ) );
  return Relation( a.arity(), a.dom(), std::move( rows ) );
}

/// A finite set of functions A -> B of mixed arities, in canonical order.
class FunctionClass
{
public:
  FunctionClass( DomainSize dom, DomainSize cod, std::vector<FiniteFunction> members = {} )
      : dom_( dom ), cod_( cod ), members_( std::move( members ) )
  {
    for ( auto const& f : members_ )
    {
      if ( f.dom() != dom_ || f.cod() != cod_ )
      {
        throw DomainMismatch( "class member over a different domain or codomain" );
      }
    }
    std::sort( members_.begin(), members_.end() );
    members_.erase( std::unique( members_.begin(), members_.end() ), members_.end() );
  }

  DomainSize dom() const noexcept { return dom_; }
  DomainSize cod() const noexcept { return cod_; }
  std::vector<FiniteFunction> const& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains( FiniteFunction const& f ) const { return std::binary_search( members_.begin(), members_.end(), f ); }

  std::vector<std::size_t> arities() const
  {
    std::vector<std::size_t> result;
    for ( auto const& f : members_ )
    {
      if ( result.empty() || result.back() != f.arity() )
        result.push_back( f.arity() );
    }
    return result;
  }

  std::size_t max_arity() const noexcept { return members_.empty() ? 0 : members_.back().arity(); }

  /// Tables of the members of the given arity.
  std::vector<Tuple> level_tables( std::size_t arity ) const
  {
    std::vector<Tuple> tables;
    for ( auto const& f : members_ )
    {
      if ( f.arity() == arity )
        tables.push_back( f.table() );
    }
    return tables;
  }

  FunctionClass level( std::size_t arity ) const
  {
    std::vector<FiniteFunction> result;
    std::copy_if( members_.begin(), members_.end(), std::back_inserter( result ), [&]( auto const& f ) { return f.arity() == arity; } );
    return FunctionClass( dom_, cod_, std::move( result ) );
  }

  FunctionClass up_to( std::size_t cap ) const
  {
    std::vector<FiniteFunction> result;
    std::copy_if( members_.begin(), members_.end(), std::back_inserter( result ), [&]( auto const& f ) { return f.arity() <= cap; } );
    return FunctionClass( dom_, cod_, std::move( result ) );
  }

  bool is_subset_of( FunctionClass const& other ) const
  {
    return dom_ == other.dom_ && cod_ == other.cod_ &&
           std::includes( other.members_.begin(), other.members_.end(), members_.begin(), members_.end() );
  }

  friend bool operator==( FunctionClass const&, FunctionClass const& ) = default;

private:
  DomainSize dom_;
  DomainSize cod_;
  std::vector<FiniteFunction> members_;
};

inline FunctionClass unite( FunctionClass const& a, FunctionClass const& b )
{
  if ( a.dom() != b.dom() || a.cod() != b.cod() )
    throw DomainMismatch( "classes over different domains" );
  std::vector<FiniteFunction> members = a.members();
  members.insert( members.end(), b.members().begin(), b.members().end() );
  return FunctionClass( a.dom(), a.cod(), std::move( members ) );
}

/// Tuples sorted by their encoding.
inline std::vector<Point> canonical_order( Relation const& r )
{
  std::vector<Point> points;
  points.reserve( r.size() );
  for ( auto const& row : r.rows() )
    points.emplace_back( row, r.dom() );
  return points;
}

/// Functions sorted by arity, then by table.
inline std::vector<FiniteFunction> canonical_order( FunctionClass const& k )
{
  return k.members();
}

inline std::vector<FiniteFunction> canonical_order( std::vector<FiniteFunction> functions )
{
  std::sort( functions.begin(), functions.end() );
  functions.erase( std::unique( functions.begin(), functions.end() ), functions.end() );
  return functions;
}

/// Limits on brute-force enumerations, plus a parallelism hint.
struct Budgets
{
  /// Candidate subsets or candidate tables enumerated in one pass.
  std::uint64_t max_subsets = std::uint64_t{ 1 } << 16;
  /// Skolem maps tried per tuple when forming minors.
  std::uint64_t max_skolem = 729;
  /// Antecedent/consequent pairs examined when listing satisfied constraints.
  std::uint64_t max_pairs = std::uint64_t{ 1 } << 22;
  /// Worker threads; never changes any result.
  unsigned threads = 1;
};

// Text forms --------------------------------------------------------------

inline char element_char( std::size_t e )
{
  if ( e < 10 )
    return static_cast<char>( '0' + e );
  if ( e < 36 )
    return static_cast<char>( 'a' + ( e - 10 ) );
  throw RangeError( "element " + std::to_string( e ) + " has no single-character form" );
}

inline std::string to_string( std::span<Element const> tuple )
{
  std::string s;
  s.reserve( tuple.size() );
  for ( auto e : tuple )
    s.push_back( element_char( e ) );
  return s;
}

inline std::string to_string( Point const& p ) { return to_string( std::span<Element const>( p.entries() ) ); }

/// "{00,01,11}"
inline std::string to_string( Relation const& r )
{
  std::string s = "{";
  for ( std::size_t i = 0; i < r.size(); ++i )
  {
    if ( i )
      s.push_back( ',' );
    s += to_string( std::span<Element const>( r.rows()[i] ) );
  }
  s.push_back( '}' );
  return s;
}

/// "2:0001"
inline std::string to_string( FiniteFunction const& f )
{
  return std::to_string( f.arity() ) + ":" + to_string( std::span<Element const>( f.table() ) );
}

/// "{1:10,2:0111}"
inline std::string to_string( FunctionClass const& k )
{
  std::string s = "{";
  for ( std::size_t i = 0; i < k.size(); ++i )
  {
    if ( i )
      s.push_back( ',' );
    s += to_string( k.members()[i] );
  }
  s.push_back( '}' );
  return s;
}

} // namespace clonecraft
