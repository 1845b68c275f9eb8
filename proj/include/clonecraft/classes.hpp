#pragma once

#include <string>
#include <vector>

#include "core.hpp"
#include "detail/pointwise.hpp"

namespace clonecraft
{

/// Truncation of every enumeration: functions up to `fn_arity_cap`
/// variables, relations up to `rel_arity_cap` coordinates.
struct ArityCaps
{
  std::size_t fn_arity_cap = 3;
  std::size_t rel_arity_cap = 4;

  void validate() const
  {
    if ( fn_arity_cap == 0 || rel_arity_cap == 0 )
      throw ShapeError( "arity caps must be positive" );
  }
};

/// A clone on a domain, presented by generators. Projections are implicit.
class CloneSpec
{
public:
  explicit CloneSpec( DomainSize dom ) : dom_( dom ), generators_( dom, dom ) {}

  CloneSpec( DomainSize dom, FunctionClass generators ) : dom_( dom ), generators_( std::move( generators ) )
  {
    if ( generators_.dom() != dom_ || generators_.cod() != dom_ )
      throw DomainMismatch( "clone generators must be endofunctions on the clone domain" );
  }

  DomainSize dom() const noexcept { return dom_; }
  FunctionClass const& generators() const noexcept { return generators_; }

  friend bool operator==( CloneSpec const&, CloneSpec const& ) = default;

private:
  DomainSize dom_;
  FunctionClass generators_;
};

inline FiniteFunction projection( DomainSize dom, std::size_t arity, std::size_t coordinate )
{
  if ( coordinate >= arity )
    throw ShapeError( "projection coordinate out of range" );
  return FiniteFunction::tabulate( arity, dom, dom, [&]( auto args ) { return args[coordinate]; } );
}

/// The n projections of arity n on `dom`.
inline FunctionClass projections( DomainSize dom, std::size_t arity )
{
  if ( arity == 0 )
    throw ShapeError( "arity must be positive" );
  std::vector<FiniteFunction> members;
  for ( std::size_t k = 0; k < arity; ++k )
    members.push_back( projection( dom, arity, k ) );
  return FunctionClass( dom, dom, std::move( members ) );
}

inline FunctionClass projections_up_to( DomainSize dom, std::size_t cap )
{
  FunctionClass result( dom, dom );
  for ( std::size_t m = 1; m <= cap; ++m )
    result = unite( result, projections( dom, m ) );
  return result;
}

/// The class IJ of all f(g_1, ..., g_n) with f in `outer` n-ary and the g_i in
/// `inner`, all of one arity.
inline FunctionClass compose( FunctionClass const& outer, FunctionClass const& inner )
{
  if ( outer.dom() != inner.cod() )
    throw DomainMismatch( "composition undefined: outer domain " + std::to_string( outer.dom().value() ) +
                          " != inner codomain " + std::to_string( inner.cod().value() ) );

  std::vector<FiniteFunction> results;
  for ( auto const m : inner.arities() )
  {
    auto const tables = inner.level_tables( m );
    for ( auto const& f : outer.members() )
    {
      for ( auto& table : detail::image_rows( f, tables ) )
        results.emplace_back( m, inner.dom(), outer.cod(), std::move( table ) );
    }
  }
  return FunctionClass( inner.dom(), outer.cod(), std::move( results ) );
}

/// IJ ⊆ I, with J truncated at the function arity cap.
inline bool is_stable_right( FunctionClass const& i, FunctionClass const& j, ArityCaps const& caps )
{
  return compose( i, j.up_to( caps.fn_arity_cap ) ).is_subset_of( i );
}

/// JI ⊆ I, with J truncated at the function arity cap.
inline bool is_stable_left( FunctionClass const& i, FunctionClass const& j, ArityCaps const& caps )
{
  return compose( j.up_to( caps.fn_arity_cap ), i ).is_subset_of( i );
}

/// The m-ary members of the clone generated by `spec`.
///
/// Least fixpoint over tables of arity m, starting from the m projections.
/// Every m-ary term operation is built from m-ary subterms, so no other
/// arity is ever needed.
inline FunctionClass generate_clone_level( CloneSpec const& spec, std::size_t m )
{
  auto const seed = projections( spec.dom(), m ).level_tables( m );
  auto const tables = detail::close_rows( spec.generators().members(), seed );

  std::vector<FiniteFunction> members;
  members.reserve( tables.size() );
  for ( auto const& t : tables )
    members.emplace_back( m, spec.dom(), spec.dom(), t );
  return FunctionClass( spec.dom(), spec.dom(), std::move( members ) );
}

/// Union of the clone levels 1..cap.
inline FunctionClass clone_levels( CloneSpec const& spec, std::size_t cap )
{
  FunctionClass result( spec.dom(), spec.dom() );
  for ( std::size_t m = 1; m <= cap; ++m )
    result = unite( result, generate_clone_level( spec, m ) );
  return result;
}

inline bool clone_member( CloneSpec const& spec, FiniteFunction const& f )
{
  if ( f.dom() != spec.dom() || f.cod() != spec.dom() )
    throw DomainMismatch( "function is not an endofunction on the clone domain" );
  return generate_clone_level( spec, f.arity() ).contains( f );
}

/// Least superset of K, within arities <= cap, stable under right composition
/// with `c1` and left composition with `c2`.
///
/// Right composition uses the c1 levels up to the cap.  Left composition closes
/// each arity level of K under the generators of `c2`, which yields C2·K for the
/// whole clone (the level is a subuniverse of the power algebra).
inline FunctionClass stability_closure( FunctionClass const& k, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps )
{
  caps.validate();
  if ( k.dom() != c1.dom() )
    throw DomainMismatch( "class domain differs from the right clone domain" );
  if ( k.cod() != c2.dom() )
    throw DomainMismatch( "class codomain differs from the left clone domain" );
  if ( k.max_arity() > caps.fn_arity_cap )
    throw ShapeError( "class has members above the function arity cap " + std::to_string( caps.fn_arity_cap ) );

  auto const right = clone_levels( c1, caps.fn_arity_cap );
  auto current = k;
  while ( true )
  {
    auto const grown = unite( current, compose( current, right ) );

    std::vector<FiniteFunction> members;
    for ( auto const m : grown.arities() )
    {
      for ( auto const& t : detail::close_rows( c2.generators().members(), grown.level_tables( m ) ) )
        members.emplace_back( m, k.dom(), k.cod(), t );
    }
    FunctionClass next( k.dom(), k.cod(), std::move( members ) );
    if ( next == current )
      return current;
    current = std::move( next );
  }
}

} // namespace clonecraft
