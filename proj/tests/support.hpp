#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include <clonecraft/classes.hpp>
#include <clonecraft/constraints.hpp>
#include <clonecraft/core.hpp>
#include <clonecraft/detail/rng.hpp>

// Literal builders and brute-force oracles shared by the unit tests.  The
// oracles deliberately avoid the library's kernels: they enumerate argument
// tuples one by one.

namespace support
{

using namespace clonecraft;

inline DomainSize const two{ 2 };
inline DomainSize const three{ 3 };

inline Tuple digits( std::string const& text )
{
  Tuple t;
  for ( char c : text )
    t.push_back( static_cast<Element>( c - '0' ) );
  return t;
}

inline FiniteFunction fn( std::size_t arity, std::string const& table, DomainSize a = two, DomainSize b = two )
{
  return FiniteFunction( arity, a, b, digits( table ) );
}

inline Relation rel( std::size_t arity, std::initializer_list<char const*> rows, DomainSize dom = two )
{
  std::vector<Tuple> tuples;
  for ( auto const* r : rows )
    tuples.push_back( digits( r ) );
  return Relation( arity, dom, std::move( tuples ) );
}

inline FunctionClass cls( std::initializer_list<FiniteFunction> members, DomainSize a = two, DomainSize b = two )
{
  return FunctionClass( a, b, std::vector<FiniteFunction>( members ) );
}

inline FiniteFunction const conj = fn( 2, "0001" );
inline FiniteFunction const disj = fn( 2, "0111" );
inline FiniteFunction const neg = fn( 1, "10" );
inline FiniteFunction const ident = fn( 1, "01" );
inline FiniteFunction const const0 = fn( 1, "00" );
inline FiniteFunction const const1 = fn( 1, "11" );
inline FiniteFunction const xor2 = fn( 2, "0110" );
inline FiniteFunction const xor3 = fn( 3, "01101001" );

inline Relation const leq = rel( 2, { "00", "01", "11" } );

/// Evaluates f at the argument tuple by direct table lookup.
inline Element eval( FiniteFunction const& f, Tuple const& args )
{
  std::uint64_t index = 0;
  for ( auto e : args )
    index = index * f.dom().value() + e;
  return f.table()[index];
}

/// Calls `body` with every tuple in {0..base-1}^length, lexicographically.
template<typename Body>
void for_each_tuple( std::size_t base, std::size_t length, Body&& body )
{
  Tuple t( length, 0 );
  while ( true )
  {
    body( t );
    std::size_t i = length;
    while ( i > 0 && ++t[i - 1] == base )
      t[--i] = 0;
    if ( i == 0 )
      return;
  }
}

/// f(g_1..g_n) evaluated point by point.
inline FiniteFunction naive_substitute( FiniteFunction const& f, std::vector<FiniteFunction> const& gs )
{
  auto const m = gs.front().arity();
  Tuple table;
  for_each_tuple( gs.front().dom().value(), m, [&]( Tuple const& x ) {
    Tuple inner;
    for ( auto const& g : gs )
      inner.push_back( eval( g, x ) );
    table.push_back( eval( f, inner ) );
  } );
  return FiniteFunction( m, gs.front().dom(), f.cod(), table );
}

/// IJ by enumerating every choice of inner functions.
inline std::set<FiniteFunction> naive_compose( FunctionClass const& i, FunctionClass const& j )
{
  std::set<FiniteFunction> out;
  for ( auto const& f : i.members() )
  {
    for ( auto m : j.arities() )
    {
      auto const level = j.level( m ).members();
      for_each_tuple( level.size(), f.arity(), [&]( Tuple const& pick ) {
        std::vector<FiniteFunction> gs;
        for ( auto p : pick )
          gs.push_back( level[p] );
        out.insert( naive_substitute( f, gs ) );
      } );
    }
  }
  return out;
}

/// {f(r_1..r_n) : f in F, r_i in R} by enumerating row choices.
inline std::set<Tuple> naive_image( FunctionClass const& f, Relation const& r )
{
  std::set<Tuple> out;
  if ( r.empty() )
    return out;
  for ( auto const& g : f.members() )
  {
    for_each_tuple( r.size(), g.arity(), [&]( Tuple const& pick ) {
      Tuple row;
      for ( std::size_t pos = 0; pos < r.arity(); ++pos )
      {
        Tuple args;
        for ( auto p : pick )
          args.push_back( r.rows()[p][pos] );
        row.push_back( eval( g, args ) );
      }
      out.insert( row );
    } );
  }
  return out;
}

inline bool naive_satisfies( FiniteFunction const& f, Constraint const& c )
{
  for ( auto const& row : naive_image( FunctionClass( f.dom(), f.cod(), { f } ), c.antecedent() ) )
    if ( !c.consequent().contains( row ) )
      return false;
  return true;
}

inline bool naive_preserves_all( FunctionClass const& f, Relation const& r )
{
  for ( auto const& row : naive_image( f, r ) )
    if ( !r.contains( row ) )
      return false;
  return true;
}

/// All functions of the given arity between the domains.
inline std::vector<FiniteFunction> all_of_arity( std::size_t arity, DomainSize a = two, DomainSize b = two )
{
  std::vector<FiniteFunction> out;
  std::size_t entries = 1;
  for ( std::size_t i = 0; i < arity; ++i )
    entries *= a.value();
  for_each_tuple( b.value(), entries, [&]( Tuple const& t ) { out.emplace_back( arity, a, b, t ); } );
  return out;
}

inline std::vector<Relation> all_relations( std::size_t arity, DomainSize dom = two )
{
  auto const full = Relation::full( arity, dom );
  std::vector<Relation> out;
  for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << full.size() ); ++mask )
  {
    std::vector<Tuple> rows;
    for ( std::size_t i = 0; i < full.size(); ++i )
      if ( mask >> i & 1 )
        rows.push_back( full.rows()[i] );
    out.emplace_back( arity, dom, rows );
  }
  return out;
}

/// Monotone Boolean functions up to `cap` variables: x <= y implies f(x) <= f(y).
inline std::set<FiniteFunction> monotone_up_to( std::size_t cap )
{
  std::set<FiniteFunction> out;
  for ( std::size_t n = 1; n <= cap; ++n )
  {
    for ( auto const& f : all_of_arity( n ) )
    {
      bool ok = true;
      for_each_tuple( 2, n, [&]( Tuple const& x ) {
        for_each_tuple( 2, n, [&]( Tuple const& y ) {
          bool below = true;
          for ( std::size_t i = 0; i < n; ++i )
            below = below && x[i] <= y[i];
          if ( below && eval( f, x ) > eval( f, y ) )
            ok = false;
        } );
      } );
      if ( ok )
        out.insert( f );
    }
  }
  return out;
}

inline std::set<FiniteFunction> as_set( FunctionClass const& k ) { return { k.members().begin(), k.members().end() }; }

inline FiniteFunction random_function( detail::Rng& rng, std::size_t arity, DomainSize a = two, DomainSize b = two )
{
  std::size_t entries = 1;
  for ( std::size_t i = 0; i < arity; ++i )
    entries *= a.value();
  Tuple table( entries );
  for ( auto& v : table )
    v = static_cast<Element>( rng.below( b.value() ) );
  return FiniteFunction( arity, a, b, table );
}

inline Relation random_relation( detail::Rng& rng, std::size_t arity, DomainSize dom = two )
{
  auto const full = Relation::full( arity, dom );
  std::vector<Tuple> rows;
  for ( auto const& r : full.rows() )
    if ( rng.coin() )
      rows.push_back( r );
  return Relation( arity, dom, rows );
}

} // namespace support
