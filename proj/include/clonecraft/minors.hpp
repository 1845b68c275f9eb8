#pragma once

#include <span>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "core.hpp"

/*!
  \file minors.hpp
  \brief Minor formation schemes and conjunctive minors of relations and constraints.

  A scheme with target m and k indeterminates is a family of maps
  h_j : n_j -> m ∪ V.  Given a ∈ A^m and a Skolem map σ : V -> A, each h_j
  yields the n_j-tuple t |-> (a + σ)(h_j(t)).  The tight conjunctive minor of a
  family (R_j) is the set of all a for which some σ puts every such tuple in
  its R_j.
*/

namespace clonecraft
{

/// One position of a scheme map: a target coordinate or an indeterminate.
struct SchemeSlot
{
  enum class Kind
  {
    target,
    indeterminate
  };

  Kind kind = Kind::target;
  std::size_t index = 0;

  static SchemeSlot target( std::size_t i ) { return { Kind::target, i }; }
  static SchemeSlot var( std::size_t i ) { return { Kind::indeterminate, i }; }

  friend bool operator==( SchemeSlot const&, SchemeSlot const& ) = default;
};

using SchemeMap = std::vector<SchemeSlot>;

class Scheme
{
public:
  Scheme( std::size_t target, std::size_t indeterminates, std::vector<SchemeMap> maps )
      : target_( target ), indeterminates_( indeterminates ), maps_( std::move( maps ) )
  {
    if ( target_ == 0 )
      throw ShapeError( "scheme target must be positive" );
    if ( maps_.empty() )
      throw ShapeError( "scheme needs at least one map" );
    for ( auto const& h : maps_ )
    {
      if ( h.empty() )
        throw ShapeError( "scheme maps must have positive source arity" );
      for ( auto const& slot : h )
      {
        auto const bound = slot.kind == SchemeSlot::Kind::target ? target_ : indeterminates_;
        if ( slot.index >= bound )
          throw ShapeError( std::string( slot.kind == SchemeSlot::Kind::target ? "target" : "indeterminate" ) + " index " +
                            std::to_string( slot.index ) + " out of range" );
      }
    }
  }

  /// Single map t_0..t_{m-1}, no indeterminates.
  static Scheme identity( std::size_t m )
  {
    SchemeMap h;
    for ( std::size_t i = 0; i < m; ++i )
      h.push_back( SchemeSlot::target( i ) );
    return Scheme( m, 0, { h } );
  }

  std::size_t target() const noexcept { return target_; }
  std::size_t indeterminates() const noexcept { return indeterminates_; }
  std::vector<SchemeMap> const& maps() const noexcept { return maps_; }
  std::vector<std::size_t> source_arities() const
  {
    std::vector<std::size_t> arities;
    for ( auto const& h : maps_ )
      arities.push_back( h.size() );
    return arities;
  }

  friend bool operator==( Scheme const&, Scheme const& ) = default;

private:
  std::size_t target_;
  std::size_t indeterminates_;
  std::vector<SchemeMap> maps_;
};

inline std::string to_string( Scheme const& s )
{
  std::string out = "target=" + std::to_string( s.target() ) + " vars=" + std::to_string( s.indeterminates() ) + " maps=[";
  for ( std::size_t j = 0; j < s.maps().size(); ++j )
  {
    if ( j )
      out += ";";
    for ( std::size_t t = 0; t < s.maps()[j].size(); ++t )
    {
      if ( t )
        out += ",";
      auto const& slot = s.maps()[j][t];
      out += ( slot.kind == SchemeSlot::Kind::target ? "t" : "v" ) + std::to_string( slot.index );
    }
  }
  return out + "]";
}

/// Assignment V -> domain.
class SkolemMap
{
public:
  SkolemMap( Tuple values, DomainSize dom ) : values_( std::move( values ) ), dom_( dom )
  {
    for ( auto v : values_ )
      if ( !dom_.contains( v ) )
        throw ShapeError( "Skolem value outside the domain" );
  }

  Tuple const& values() const noexcept { return values_; }
  DomainSize dom() const noexcept { return dom_; }

private:
  Tuple values_;
  DomainSize dom_;
};

namespace detail
{

inline void scheme_row( SchemeMap const& h, std::span<Element const> a, std::span<Element const> sigma, Tuple& out )
{
  out.resize( h.size() );
  for ( std::size_t t = 0; t < h.size(); ++t )
    out[t] = h[t].kind == SchemeSlot::Kind::target ? a[h[t].index] : sigma[h[t].index];
}

inline std::size_t skolem_count( DomainSize dom, std::size_t vars, Budgets const& budgets )
{
  auto const count = checked_power( dom.value(), vars );
  if ( !count || *count > budgets.max_skolem )
    throw BudgetExceeded( "max-skolem", std::to_string( dom.value() ) + "^" + std::to_string( vars ) + " Skolem maps",
                          std::to_string( budgets.max_skolem ) );
  return static_cast<std::size_t>( *count );
}

} // namespace detail

/// (a + σ)h
inline Point apply_scheme_row( SchemeMap const& h, Point const& a, SkolemMap const& sigma )
{
  if ( a.base() != sigma.dom() )
    throw DomainMismatch( "point and Skolem map over different domains" );
  for ( auto const& slot : h )
  {
    if ( slot.kind == SchemeSlot::Kind::target && slot.index >= a.arity() )
      throw ShapeError( "scheme refers to target " + std::to_string( slot.index ) + " beyond the point length" );
    if ( slot.kind == SchemeSlot::Kind::indeterminate && slot.index >= sigma.values().size() )
      throw ShapeError( "Skolem map undefined on indeterminate v" + std::to_string( slot.index ) );
  }
  Tuple out;
  detail::scheme_row( h, a.entries(), sigma.values(), out );
  return Point( std::move( out ), a.base() );
}

/// The unique relation that is both a restrictive and an extensive
/// conjunctive minor of `family` via `scheme`.
inline Relation tight_minor( std::span<Relation const> family, Scheme const& scheme, Budgets const& budgets = {} )
{
  if ( family.size() != scheme.maps().size() )
    throw ShapeError( "family has " + std::to_string( family.size() ) + " members, scheme has " + std::to_string( scheme.maps().size() ) + " maps" );
  if ( family.empty() )
    throw ShapeError( "family must be nonempty" );
  auto const dom = family.front().dom();
  for ( std::size_t j = 0; j < family.size(); ++j )
  {
    if ( family[j].dom() != dom )
      throw DomainMismatch( "family members over different domains" );
    if ( family[j].arity() != scheme.maps()[j].size() )
      throw ShapeError( "family member " + std::to_string( j ) + " has arity " + std::to_string( family[j].arity() ) + ", map has source " +
                        std::to_string( scheme.maps()[j].size() ) );
  }

  auto const n_sigma = detail::skolem_count( dom, scheme.indeterminates(), budgets );
  auto const n_points = table_size( dom, scheme.target() );

  std::vector<Tuple> rows;
  Tuple a( scheme.target() );
  Tuple sigma( scheme.indeterminates() );
  Tuple image;
  for ( std::size_t p = 0; p < n_points; ++p )
  {
    detail::decode_into( p, dom.value(), a );
    for ( std::size_t s = 0; s < n_sigma; ++s )
    {
      detail::decode_into( s, dom.value(), sigma );
      bool witnessed = true;
      for ( std::size_t j = 0; j < family.size() && witnessed; ++j )
      {
        detail::scheme_row( scheme.maps()[j], a, sigma, image );
        witnessed = family[j].contains( image );
      }
      if ( witnessed )
      {
        rows.push_back( a );
        break;
      }
    }
  }
  return Relation( scheme.target(), dom, std::move( rows ) );
}

/// R ⊆ tight minor.
inline bool is_restrictive( Relation const& r, std::span<Relation const> family, Scheme const& scheme, Budgets const& budgets = {} )
{
  auto const tight = tight_minor( family, scheme, budgets );
  require_same_shape( r, tight );
  return r.is_subset_of( tight );
}

/// R ⊇ tight minor.
inline bool is_extensive( Relation const& r, std::span<Relation const> family, Scheme const& scheme, Budgets const& budgets = {} )
{
  auto const tight = tight_minor( family, scheme, budgets );
  require_same_shape( r, tight );
  return tight.is_subset_of( r );
}

namespace detail
{

inline std::vector<Relation> antecedents( std::span<Constraint const> family )
{
  std::vector<Relation> out;
  for ( auto const& c : family )
    out.push_back( c.antecedent() );
  return out;
}

inline std::vector<Relation> consequents( std::span<Constraint const> family )
{
  std::vector<Relation> out;
  for ( auto const& c : family )
    out.push_back( c.consequent() );
  return out;
}

} // namespace detail

/// Tight minors taken on both sides: Skolem maps range over A for the
/// antecedents and over B for the consequents.
inline Constraint tight_minor_constraint( std::span<Constraint const> family, Scheme const& scheme, Budgets const& budgets = {} )
{
  return Constraint( tight_minor( detail::antecedents( family ), scheme, budgets ), tight_minor( detail::consequents( family ), scheme, budgets ) );
}

/// Restrictive antecedent and extensive consequent.
inline bool is_conjunctive_minor( Constraint const& c, std::span<Constraint const> family, Scheme const& scheme, Budgets const& budgets = {} )
{
  return is_restrictive( c.antecedent(), detail::antecedents( family ), scheme, budgets ) &&
         is_extensive( c.consequent(), detail::consequents( family ), scheme, budgets );
}

} // namespace clonecraft
