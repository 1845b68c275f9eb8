#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "classes.hpp"
#include "constraints.hpp"
#include "core.hpp"
#include "detail/parallel.hpp"
#include "detail/rng.hpp"
#include "invariants.hpp"
#include "minors.hpp"

/*!
  \file galois.hpp
  \brief Closure of function classes and of constraint sets, and separating constraints.

  Everything is truncated at an ArityCaps pair.  On a finite domain every
  class is locally closed, so the only gap between a capped answer and the
  untruncated one is the caps themselves:

  - a class closure is exact once rel_arity_cap >= |A|^fn_arity_cap, because
    an n-ary function outside a stable class is separated by a constraint of
    arity |A|^n (canonical_constraint);
  - a constraint closure is exact once fn_arity_cap >= |A|^rel_arity_cap,
    because an m-ary constraint violated by some function is violated by one
    of its minors with at most |A|^m variables.
*/

namespace clonecraft
{

template<typename Closed>
struct ClosureReport
{
  Closed closed;
  ArityCaps caps;
  std::optional<std::variant<Constraint, FiniteFunction>> witness;
  bool exact_within_caps = false;
};

struct SeparationResult
{
  /// Empty when the function lies in the closure (not separable).
  std::optional<Constraint> separator;
  /// The stability closure the separator was built from.
  FunctionClass closed_class;
  /// Whether that closure differs from the class that was passed in.
  bool stabilized = false;
};

namespace detail
{

inline bool threshold_met( std::size_t base, std::size_t exponent, std::size_t cap )
{
  auto const needed = checked_power( base, exponent );
  return needed && *needed <= cap;
}

/// The function with table `index` (big-endian over table positions).
inline FiniteFunction candidate_function( std::uint64_t index, std::size_t arity, DomainSize a, DomainSize b )
{
  Tuple table( table_size( a, arity ) );
  decode_into( index, b.value(), table );
  return FiniteFunction( arity, a, b, std::move( table ) );
}

inline std::uint64_t candidate_count( std::size_t arity, DomainSize a, DomainSize b, Budgets const& budgets )
{
  auto const entries = checked_power( a.value(), arity );
  auto const count = entries ? checked_power( b.value(), static_cast<std::size_t>( *entries ) ) : std::nullopt;
  if ( !count || *count > budgets.max_subsets )
  {
    throw BudgetExceeded( "max-subsets",
                          std::to_string( b.value() ) + "^(" + std::to_string( a.value() ) + "^" + std::to_string( arity ) + ") candidate functions",
                          std::to_string( budgets.max_subsets ) );
  }
  return *count;
}

/// Every function of arity <= cap accepted by `keep`, in canonical order.
template<typename Keep>
FunctionClass filter_functions( DomainSize a, DomainSize b, std::size_t cap, Budgets const& budgets, Keep const& keep )
{
  std::vector<FiniteFunction> members;
  for ( std::size_t n = 1; n <= cap; ++n )
  {
    auto const count = candidate_count( n, a, b, budgets );
    auto const hits = parallel_filter( count, budgets.threads, [&]( std::uint64_t i ) { return keep( candidate_function( i, n, a, b ) ); } );
    for ( auto i : hits )
      members.push_back( candidate_function( i, n, a, b ) );
  }
  return FunctionClass( a, b, std::move( members ) );
}

} // namespace detail

/// The columns a^1..a^n of A^n listed in canonical order: a relation of arity |A|^n.
inline Relation coordinate_columns( DomainSize a, std::size_t n )
{
  auto const points = table_size( a, n );
  std::vector<Tuple> columns( n, Tuple( points ) );
  Tuple x( n );
  for ( std::size_t i = 0; i < points; ++i )
  {
    detail::decode_into( i, a.value(), x );
    for ( std::size_t t = 0; t < n; ++t )
      columns[t][i] = x[t];
  }
  return Relation( points, a, std::move( columns ) );
}

/// (C1·R0, S) where R0 holds the coordinate columns of A^n and S the images
/// of those columns under the n-ary members of K (which are their tables).
inline Constraint canonical_constraint( FunctionClass const& k, std::size_t n, CloneSpec const& c1, std::size_t max_arity )
{
  if ( k.dom() != c1.dom() )
    throw DomainMismatch( "class domain differs from the clone domain" );
  if ( !detail::threshold_met( k.dom().value(), n, max_arity ) )
    throw BudgetExceeded( "rel-cap", "constraint arity " + std::to_string( k.dom().value() ) + "^" + std::to_string( n ), std::to_string( max_arity ) );

  auto const columns = coordinate_columns( k.dom(), n );
  auto antecedent = generate_invariant( c1, columns );
  Relation consequent( columns.arity(), k.cod(), k.level_tables( n ) );
  return Constraint( std::move( antecedent ), std::move( consequent ) );
}

/// A (c1,c2)-constraint satisfied by the stability closure of K but not by g,
/// or nothing when g belongs to that closure.
inline SeparationResult separating_constraint( FunctionClass const& k, FiniteFunction const& g, CloneSpec const& c1, CloneSpec const& c2,
                                               ArityCaps const& caps )
{
  if ( g.dom() != k.dom() || g.cod() != k.cod() )
    throw DomainMismatch( "function and class over different base sets" );
  if ( g.arity() > caps.fn_arity_cap )
    throw ShapeError( "function arity " + std::to_string( g.arity() ) + " above the function arity cap" );

  auto closed = stability_closure( k, c1, c2, caps );
  SeparationResult result{ std::nullopt, closed, closed != k };
  if ( !closed.contains( g ) )
    result.separator = canonical_constraint( closed, g.arity(), c1, caps.rel_arity_cap );
  return result;
}

/// Functions of arity <= fn cap satisfying every (c1,c2)-constraint of arity
/// <= rel cap that K satisfies.
///
/// For each invariant antecedent R the strongest admissible consequent is
/// the c2-invariant generated by KR, so no consequent enumeration is needed.
inline FunctionClass double_dual_of_class( FunctionClass const& k, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps,
                                           Budgets const& budgets = {} )
{
  std::vector<Constraint> strongest;
  for ( std::size_t m = 1; m <= caps.rel_arity_cap; ++m )
  {
    for ( auto const& r : enumerate_invariants( c1, m, budgets ) )
      strongest.emplace_back( r, generate_invariant( c2, image( k, r ) ) );
  }
  return detail::filter_functions( k.dom(), k.cod(), caps.fn_arity_cap, budgets, [&]( FiniteFunction const& g ) {
    return std::all_of( strongest.begin(), strongest.end(), [&]( auto const& c ) { return satisfies( g, c ); } );
  } );
}

inline ClosureReport<FunctionClass> closure_of_class( FunctionClass const& k, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps,
                                                      Budgets const& budgets = {} )
{
  caps.validate();
  if ( k.empty() )
    return { k, caps, std::nullopt, true };

  auto closed = stability_closure( k, c1, c2, caps );
  if ( detail::threshold_met( k.dom().value(), caps.fn_arity_cap, caps.rel_arity_cap ) )
  {
    // Every g outside `closed` fails its canonical_constraint.
    return { std::move( closed ), caps, std::nullopt, true };
  }
  return { double_dual_of_class( closed, c1, c2, caps, budgets ), caps, std::nullopt, false };
}

/// All (c1,c2)-constraints of arity <= rel cap satisfied by every member of K.
inline ConstraintSet constraints_satisfied( FunctionClass const& k, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps,
                                            Budgets const& budgets = {} )
{
  caps.validate();
  if ( k.dom() != c1.dom() || k.cod() != c2.dom() )
    throw DomainMismatch( "class base sets differ from the clone domains" );

  ConstraintSet result( c1.dom(), c2.dom() );
  std::uint64_t pairs = 0;
  for ( std::size_t m = 1; m <= caps.rel_arity_cap; ++m )
  {
    auto const antecedents = enumerate_invariants( c1, m, budgets );
    auto const consequents = enumerate_invariants( c2, m, budgets );
    pairs += static_cast<std::uint64_t>( antecedents.size() ) * consequents.size();
    if ( pairs > budgets.max_pairs )
      throw BudgetExceeded( "max-pairs", "at least " + std::to_string( pairs ) + " invariant pairs", std::to_string( budgets.max_pairs ) );

    for ( auto const& r : antecedents )
    {
      auto const least = image( k, r );
      for ( auto const& s : consequents )
        if ( least.is_subset_of( s ) )
          result.insert( Constraint( r, s ) );
    }
  }
  return result;
}

/// All functions of arity <= fn cap satisfying every member of T.
inline FunctionClass functions_satisfying( ConstraintSet const& t, ArityCaps const& caps, Budgets const& budgets = {} )
{
  caps.validate();
  return detail::filter_functions( t.a_size(), t.b_size(), caps.fn_arity_cap, budgets, [&]( FiniteFunction const& g ) {
    return std::all_of( t.members().begin(), t.members().end(), [&]( auto const& c ) { return satisfies( g, c ); } );
  } );
}

inline void require_invariant_constraints( ConstraintSet const& t, CloneSpec const& c1, CloneSpec const& c2 )
{
  if ( t.a_size() != c1.dom() || t.b_size() != c2.dom() )
    throw DomainMismatch( "constraint set base sets differ from the clone domains" );
  for ( auto const& c : t.members() )
    if ( !is_invariant_constraint( c, c1, c2 ) )
      throw ValidationError( "constraint " + to_string( c ) + " is not a (C1,C2)-constraint" );
}

/// The (c1,c2)-constraints satisfied by every function that satisfies T0.
inline ClosureReport<ConstraintSet> closure_of_constraints( ConstraintSet const& t0, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps,
                                                            Budgets const& budgets = {} )
{
  caps.validate();
  require_invariant_constraints( t0, c1, c2 );

  auto const k = functions_satisfying( t0, caps, budgets );
  auto closed = constraints_satisfied( k, c1, c2, caps, budgets );
  for ( auto const& c : t0.members() )
    if ( c.arity() > caps.rel_arity_cap )
      closed.insert( c );

  bool const exact = detail::threshold_met( t0.a_size().value(), caps.rel_arity_cap, caps.fn_arity_cap );
  return { std::move( closed ), caps, std::nullopt, exact };
}

/// Outcome of sampling both sides of the relaxation/minor-closure equivalence.
struct MinorClosureCheck
{
  std::size_t samples = 0;
  /// T0 contained every sampled (C1,C2)-conjunctive minor of its members.
  bool invariant_minors_closed = true;
  /// The relaxations of T0 contained every sampled conjunctive minor of relaxations.
  bool relaxation_minors_closed = true;
  std::optional<std::string> counterexample;

  bool holds() const noexcept { return invariant_minors_closed && relaxation_minors_closed; }
  bool consistent() const noexcept { return invariant_minors_closed == relaxation_minors_closed; }
};

namespace detail
{

inline Scheme random_scheme( Rng& rng, std::size_t target, std::size_t vars, std::vector<std::size_t> const& source_arities )
{
  std::vector<SchemeMap> maps;
  for ( auto n : source_arities )
  {
    SchemeMap h;
    for ( std::size_t t = 0; t < n; ++t )
    {
      if ( vars > 0 && rng.below( 3 ) == 0 )
        h.push_back( SchemeSlot::var( rng.below( vars ) ) );
      else
        h.push_back( SchemeSlot::target( rng.below( target ) ) );
    }
    maps.push_back( std::move( h ) );
  }
  return Scheme( target, vars, std::move( maps ) );
}

inline Relation random_subset( Rng& rng, Relation const& r )
{
  std::vector<Tuple> rows;
  for ( auto const& row : r.rows() )
    if ( rng.coin() )
      rows.push_back( row );
  return Relation( r.arity(), r.dom(), std::move( rows ) );
}

inline Relation random_superset( Rng& rng, Relation const& r )
{
  std::vector<Tuple> rows = r.rows();
  auto const full = Relation::full( r.arity(), r.dom() );
  for ( auto const& row : full.rows() )
    if ( !r.contains( row ) && rng.coin() )
      rows.push_back( row );
  return Relation( r.arity(), r.dom(), std::move( rows ) );
}

/// A random relaxation; the constraint itself a third of the time.
inline Constraint random_relaxation( Rng& rng, Constraint const& c )
{
  if ( rng.below( 3 ) == 0 )
    return c;
  return Constraint( random_subset( rng, c.antecedent() ), random_superset( rng, c.consequent() ) );
}

} // namespace detail

/// Samples minor formation over T0 and over the set of all relaxations of T0.
inline MinorClosureCheck check_minor_closure( ConstraintSet const& t0, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps, std::uint64_t seed,
                                             std::size_t samples = 200, Budgets const& budgets = {} )
{
  caps.validate();
  require_invariant_constraints( t0, c1, c2 );

  MinorClosureCheck check;
  if ( t0.empty() )
    return check;

  std::map<std::size_t, std::pair<std::vector<Relation>, std::vector<Relation>>> invariants;
  auto const invariants_at = [&]( std::size_t m ) -> auto const& {
    auto it = invariants.find( m );
    if ( it == invariants.end() )
      it = invariants.emplace( m, std::pair{ enumerate_invariants( c1, m, budgets ), enumerate_invariants( c2, m, budgets ) } ).first;
    return it->second;
  };
  auto const in_relaxation_set = [&]( Constraint const& c ) {
    return std::any_of( t0.members().begin(), t0.members().end(),
                        [&]( auto const& c0 ) { return c0.arity() == c.arity() && is_relaxation( c, c0 ); } );
  };

  detail::Rng rng( seed );
  for ( std::size_t s = 0; s < samples; ++s )
  {
    auto const target = static_cast<std::size_t>( rng.between( 1, caps.rel_arity_cap ) );
    auto const vars = static_cast<std::size_t>( rng.between( 0, 2 ) );
    auto const size = static_cast<std::size_t>( rng.between( 1, 3 ) );

    std::vector<Constraint> family;
    std::vector<std::size_t> arities;
    for ( std::size_t j = 0; j < size; ++j )
    {
      family.push_back( t0.members()[rng.below( t0.size() )] );
      arities.push_back( family.back().arity() );
    }
    auto const scheme = detail::random_scheme( rng, target, vars, arities );
    ++check.samples;

    auto const tight = tight_minor_constraint( family, scheme, budgets );
    if ( check.invariant_minors_closed )
    {
      auto const& [left, right] = invariants_at( target );
      for ( auto const& r : left )
      {
        if ( !r.is_subset_of( tight.antecedent() ) )
          continue;
        for ( auto const& sv : right )
        {
          if ( !tight.consequent().is_subset_of( sv ) )
            continue;
          Constraint minor( r, sv );
          if ( !t0.contains( minor ) )
          {
            check.invariant_minors_closed = false;
            if ( !check.counterexample )
              check.counterexample = "(C1,C2)-conjunctive minor " + to_string( minor ) + " via " + to_string( scheme ) + " is not in T0";
            break;
          }
        }
        if ( !check.invariant_minors_closed )
          break;
      }
    }

    if ( check.relaxation_minors_closed )
    {
      std::vector<Constraint> relaxed;
      for ( auto const& c : family )
        relaxed.push_back( detail::random_relaxation( rng, c ) );
      // The relaxation set is closed under relaxations, so testing the tight
      // minor covers every conjunctive minor via this scheme.
      auto const minor = tight_minor_constraint( relaxed, scheme, budgets );
      if ( !in_relaxation_set( minor ) )
      {
        check.relaxation_minors_closed = false;
        if ( !check.counterexample )
          check.counterexample = "conjunctive minor " + to_string( minor ) + " via " + to_string( scheme ) + " is not a relaxation of any member of T0";
      }
    }
  }
  return check;
}

inline bool verify_lemma4_equivalence( ConstraintSet const& t0, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps, std::uint64_t seed = 0,
                                       std::size_t samples = 200, Budgets const& budgets = {} )
{
  return check_minor_closure( t0, c1, c2, caps, seed, samples, budgets ).holds();
}

} // namespace clonecraft
