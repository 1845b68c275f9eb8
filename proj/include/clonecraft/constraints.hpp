#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "classes.hpp"
#include "core.hpp"
#include "detail/pointwise.hpp"
#include "invariants.hpp"

namespace clonecraft
{

/// An A-to-B constraint (R, S): antecedent R ⊆ A^m, consequent S ⊆ B^m.
class Constraint
{
public:
  Constraint( Relation antecedent, Relation consequent )
      : antecedent_( std::move( antecedent ) ), consequent_( std::move( consequent ) )
  {
    if ( antecedent_.arity() != consequent_.arity() )
      throw ShapeError( "antecedent arity " + std::to_string( antecedent_.arity() ) + " != consequent arity " +
                        std::to_string( consequent_.arity() ) );
  }

  Relation const& antecedent() const noexcept { return antecedent_; }
  Relation const& consequent() const noexcept { return consequent_; }
  std::size_t arity() const noexcept { return antecedent_.arity(); }
  DomainSize a_size() const noexcept { return antecedent_.dom(); }
  DomainSize b_size() const noexcept { return consequent_.dom(); }

  friend auto operator<=>( Constraint const& x, Constraint const& y )
  {
    if ( auto c = x.antecedent_ <=> y.antecedent_; c != 0 )
      return c;
    return x.consequent_ <=> y.consequent_;
  }
  friend bool operator==( Constraint const&, Constraint const& ) = default;

private:
  Relation antecedent_;
  Relation consequent_;
};

inline std::string to_string( Constraint const& c )
{
  return "(" + to_string( c.antecedent() ) + "," + to_string( c.consequent() ) + ")";
}

/// A set of A-to-B constraints in canonical order.
class ConstraintSet
{
public:
  ConstraintSet( DomainSize a, DomainSize b, std::vector<Constraint> members = {} ) : a_( a ), b_( b ), members_( std::move( members ) )
  {
    for ( auto const& c : members_ )
      check( c );
    normalize();
  }

  DomainSize a_size() const noexcept { return a_; }
  DomainSize b_size() const noexcept { return b_; }
  std::vector<Constraint> const& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains( Constraint const& c ) const { return std::binary_search( members_.begin(), members_.end(), c ); }

  void insert( Constraint c )
  {
    check( c );
    auto it = std::lower_bound( members_.begin(), members_.end(), c );
    if ( it == members_.end() || *it != c )
      members_.insert( it, std::move( c ) );
  }

  bool is_subset_of( ConstraintSet const& other ) const
  {
    return a_ == other.a_ && b_ == other.b_ && std::includes( other.members_.begin(), other.members_.end(), members_.begin(), members_.end() );
  }

  friend bool operator==( ConstraintSet const&, ConstraintSet const& ) = default;

private:
  void check( Constraint const& c ) const
  {
    if ( c.a_size() != a_ || c.b_size() != b_ )
      throw DomainMismatch( "constraint over different base sets than its set" );
  }

  void normalize()
  {
    std::sort( members_.begin(), members_.end() );
    members_.erase( std::unique( members_.begin(), members_.end() ), members_.end() );
  }

  DomainSize a_;
  DomainSize b_;
  std::vector<Constraint> members_;
};

inline Relation equality_relation( DomainSize dom )
{
  std::vector<Tuple> rows;
  for ( std::size_t x = 0; x < dom.value(); ++x )
    rows.push_back( { static_cast<Element>( x ), static_cast<Element>( x ) } );
  return Relation( 2, dom, std::move( rows ) );
}

/// (=_A, =_B)
inline Constraint make_equality( DomainSize a, DomainSize b )
{
  return Constraint( equality_relation( a ), equality_relation( b ) );
}

/// (∅, ∅) of arity m.
inline Constraint make_empty( DomainSize a, DomainSize b, std::size_t m )
{
  return Constraint( Relation( m, a ), Relation( m, b ) );
}

/// (A^m, B^m)
inline Constraint make_trivial( DomainSize a, DomainSize b, std::size_t m )
{
  return Constraint( Relation::full( m, a ), Relation::full( m, b ) );
}

/// fR ⊆ S, over all n-tuples of antecedent rows.
inline bool satisfies( FiniteFunction const& f, Constraint const& c )
{
  if ( f.dom() != c.a_size() || f.cod() != c.b_size() )
    throw ShapeError( "function " + to_string( f ) + " does not map the antecedent domain to the consequent domain" );
  for ( auto const& row : detail::image_rows( f, c.antecedent().rows() ) )
    if ( !c.consequent().contains( row ) )
      return false;
  return true;
}

inline bool class_satisfies( FunctionClass const& k, Constraint const& c )
{
  return std::all_of( k.members().begin(), k.members().end(), [&]( auto const& f ) { return satisfies( f, c ); } );
}

/// R ⊆ R0 and S ⊇ S0.  Constraints of different arity are unrelated.
inline bool is_relaxation( Constraint const& c, Constraint const& c0 )
{
  if ( c.a_size() != c0.a_size() || c.b_size() != c0.b_size() )
    throw DomainMismatch( "relaxation compares constraints over different base sets" );
  if ( c.arity() != c0.arity() )
    return false;
  return c.antecedent().is_subset_of( c0.antecedent() ) && c0.consequent().is_subset_of( c.consequent() );
}

/// (R, ∩ S_j) from a family sharing the antecedent R.
inline Constraint intersect_consequents( std::span<Constraint const> family )
{
  if ( family.empty() )
    throw ShapeError( "intersecting consequents needs a nonempty family" );
  auto consequent = family.front().consequent();
  for ( auto const& c : family.subspan( 1 ) )
  {
    if ( c.antecedent() != family.front().antecedent() )
      throw ValidationError( "family members must share the antecedent" );
    consequent = intersection( consequent, c.consequent() );
  }
  return Constraint( family.front().antecedent(), std::move( consequent ) );
}

/// Antecedent a c1-invariant and consequent a c2-invariant.
inline bool is_invariant_constraint( Constraint const& c, CloneSpec const& c1, CloneSpec const& c2 )
{
  if ( c.a_size() != c1.dom() || c.b_size() != c2.dom() )
    throw DomainMismatch( "constraint base sets differ from the clone domains" );
  return is_invariant( c1, c.antecedent() ) && is_invariant( c2, c.consequent() );
}

inline bool is_cc_relaxation( Constraint const& c, Constraint const& c0, CloneSpec const& c1, CloneSpec const& c2 )
{
  return is_relaxation( c, c0 ) && is_invariant_constraint( c, c1, c2 );
}

} // namespace clonecraft
