#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "classes.hpp"
#include "constraints.hpp"
#include "core.hpp"
#include "detail/rng.hpp"
#include "galois.hpp"
#include "invariants.hpp"
#include "minors.hpp"

/*!
  \file verify.hpp
  \brief Seeded property batteries with greedy counterexample shrinking.

  Suites: assoc, lemma1, minors, szabo, relaxation, theorem1, theorem3, L01.
  A suite is deterministic given its seed, its caps and its case count.
*/

namespace clonecraft
{

struct SuiteResult
{
  std::string name;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  double wall_seconds = 0.0;

  bool passed() const noexcept { return failures.empty(); }
};

struct VerifyOptions
{
  /// Overrides the suite's own regime when set.
  std::optional<ArityCaps> caps;
  /// Overrides the suite's default number of cases when set.
  std::optional<std::size_t> cases;
  Budgets budgets;
};

inline std::vector<std::string> const& suite_names()
{
  static const std::vector<std::string> names{ "assoc", "lemma1", "minors", "szabo", "relaxation", "theorem1", "theorem3", "L01" };
  return names;
}

template<typename Instance>
struct Property
{
  std::string name;
  std::function<Instance( detail::Rng& )> generate;
  /// Failure description, or nothing when the instance passes.
  std::function<std::optional<std::string>( Instance const& )> check;
  std::function<std::vector<Instance>( Instance const& )> shrink;
  std::function<std::string( Instance const& )> show;
};

namespace detail
{

inline constexpr std::size_t max_reported_failures = 10;
inline constexpr std::size_t max_shrink_steps = 200;

template<typename Instance>
std::optional<std::string> guarded_check( Property<Instance> const& p, Instance const& inst )
{
  try
  {
    return p.check( inst );
  }
  catch ( BudgetExceeded const& )
  {
    throw;
  }
  catch ( std::exception const& e )
  {
    return std::string( "exception: " ) + e.what();
  }
}

} // namespace detail

/// Runs `cases` generated instances; each failure is shrunk greedily before it is reported.
template<typename Instance>
void run_property( Property<Instance> const& p, std::size_t cases, detail::Rng& rng, SuiteResult& result )
{
  for ( std::size_t i = 0; i < cases; ++i )
  {
    auto inst = p.generate( rng );
    ++result.cases;
    auto failure = detail::guarded_check( p, inst );
    if ( !failure )
      continue;

    for ( std::size_t step = 0; p.shrink && step < detail::max_shrink_steps; ++step )
    {
      bool smaller = false;
      for ( auto& candidate : p.shrink( inst ) )
      {
        if ( auto f = detail::guarded_check( p, candidate ) )
        {
          inst = std::move( candidate );
          failure = std::move( f );
          smaller = true;
          break;
        }
      }
      if ( !smaller )
        break;
    }
    if ( result.failures.size() < detail::max_reported_failures )
      result.failures.push_back( p.name + " #" + std::to_string( i ) + ": " + *failure + " | " + p.show( inst ) );
  }
}

/// Records one deterministic check.
inline void expect( SuiteResult& result, bool ok, std::string const& what )
{
  ++result.cases;
  if ( !ok && result.failures.size() < detail::max_reported_failures )
    result.failures.push_back( what );
}

namespace detail
{

inline DomainSize const boolean{ 2 };

inline SuiteResult started( std::string name, std::uint64_t seed )
{
  SuiteResult r;
  r.name = std::move( name );
  r.seed = seed;
  return r;
}

inline FiniteFunction random_function( Rng& rng, std::size_t arity, DomainSize a, DomainSize b )
{
  Tuple table( table_size( a, arity ) );
  for ( auto& v : table )
    v = static_cast<Element>( rng.below( b.value() ) );
  return FiniteFunction( arity, a, b, std::move( table ) );
}

/// At most `per_arity` members of each arity 1..max_arity.
inline FunctionClass random_class( Rng& rng, DomainSize a, DomainSize b, std::size_t max_arity, std::size_t per_arity )
{
  std::vector<FiniteFunction> members;
  for ( std::size_t n = 1; n <= max_arity; ++n )
  {
    auto const count = rng.below( per_arity + 1 );
    for ( std::size_t i = 0; i < count; ++i )
      members.push_back( random_function( rng, n, a, b ) );
  }
  return FunctionClass( a, b, std::move( members ) );
}

inline Relation random_relation( Rng& rng, std::size_t arity, DomainSize dom )
{
  return random_subset( rng, Relation::full( arity, dom ) );
}

inline Relation random_relation_at_most( Rng& rng, std::size_t arity, DomainSize dom, std::size_t max_rows )
{
  auto const full = Relation::full( arity, dom );
  std::vector<Tuple> rows;
  auto const count = rng.below( max_rows + 1 );
  for ( std::size_t i = 0; i < count; ++i )
    rows.push_back( full.rows()[rng.below( full.size() )] );
  return Relation( arity, dom, std::move( rows ) );
}

inline CloneSpec random_clone( Rng& rng, DomainSize dom, std::size_t max_generators, std::size_t max_arity )
{
  std::vector<FiniteFunction> gens;
  auto const count = rng.below( max_generators + 1 );
  for ( std::size_t i = 0; i < count; ++i )
    gens.push_back( random_function( rng, rng.between( 1, max_arity ), dom, dom ) );
  return CloneSpec( dom, FunctionClass( dom, dom, std::move( gens ) ) );
}

inline std::vector<FunctionClass> without_one( FunctionClass const& k )
{
  std::vector<FunctionClass> out;
  for ( std::size_t i = 0; i < k.size(); ++i )
  {
    auto members = k.members();
    members.erase( members.begin() + static_cast<std::ptrdiff_t>( i ) );
    out.emplace_back( k.dom(), k.cod(), std::move( members ) );
  }
  return out;
}

inline std::vector<Relation> without_one( Relation const& r )
{
  std::vector<Relation> out;
  for ( std::size_t i = 0; i < r.size(); ++i )
  {
    auto rows = r.rows();
    rows.erase( rows.begin() + static_cast<std::ptrdiff_t>( i ) );
    out.emplace_back( r.arity(), r.dom(), std::move( rows ) );
  }
  return out;
}

inline std::string show_clone( CloneSpec const& c ) { return "clone" + to_string( c.generators() ); }

template<typename T>
std::string show_list( std::vector<T> const& items )
{
  std::string s = "[";
  for ( std::size_t i = 0; i < items.size(); ++i )
    s += ( i ? "," : "" ) + to_string( items[i] );
  return s + "]";
}

inline FiniteFunction boolean_triple_sum() { return FiniteFunction( 3, boolean, boolean, { 0, 1, 1, 0, 1, 0, 0, 1 } ); }

inline CloneSpec l01_clone() { return CloneSpec( boolean, FunctionClass( boolean, boolean, { boolean_triple_sum() } ) ); }

/// Every function of arity 1..cap between the given domains.
inline FunctionClass all_functions( DomainSize a, DomainSize b, std::size_t cap, Budgets const& budgets = {} )
{
  return filter_functions( a, b, cap, budgets, []( FiniteFunction const& ) { return true; } );
}

/// Random scheme with the given source arities: target 1..max_target, 0..max_vars indeterminates.
inline Scheme random_scheme_for( Rng& rng, std::vector<std::size_t> const& arities, std::size_t max_target, std::size_t max_vars )
{
  auto const target = rng.between( 1, max_target );
  auto const vars = rng.between( 0, max_vars );
  return random_scheme( rng, target, vars, arities );
}

inline Scheme drop_map( Scheme const& s, std::size_t j )
{
  auto maps = s.maps();
  maps.erase( maps.begin() + static_cast<std::ptrdiff_t>( j ) );
  return Scheme( s.target(), s.indeterminates(), std::move( maps ) );
}

// -- assoc ------------------------------------------------------------------

struct AssocCase
{
  FunctionClass i, j, k;
  bool j_is_clone;
};

inline SuiteResult suite_assoc( std::uint64_t seed, std::size_t cases )
{
  auto result = started( "assoc", seed );
  Rng rng( seed );
  Property<AssocCase> p;
  p.name = "associativity";
  p.generate = []( Rng& r ) {
    auto i = random_class( r, boolean, boolean, 2, 2 );
    bool const as_clone = r.coin();
    auto j = as_clone ? clone_levels( random_clone( r, boolean, 2, 2 ), 2 ) : random_class( r, boolean, boolean, 2, 2 );
    auto k = random_class( r, boolean, boolean, 2, 2 );
    return AssocCase{ std::move( i ), std::move( j ), std::move( k ), as_clone };
  };
  p.check = []( AssocCase const& c ) -> std::optional<std::string> {
    auto const left = compose( compose( c.i, c.j ), c.k );
    auto const right = compose( c.i, compose( c.j, c.k ) );
    if ( !left.is_subset_of( right ) )
      return "(IJ)K not included in I(JK)";
    // With J a clone truncated at arity 2 and K holding at most 2 members per
    // arity, every member of I(JK) uses at most 2 distinct members of K.
    if ( c.j_is_clone && left != right )
      return "(IJ)K != I(JK) for J a clone";
    return std::nullopt;
  };
  p.shrink = []( AssocCase const& c ) {
    std::vector<AssocCase> out;
    for ( auto& i : without_one( c.i ) )
      out.push_back( { i, c.j, c.k, c.j_is_clone } );
    for ( auto& k : without_one( c.k ) )
      out.push_back( { c.i, c.j, k, c.j_is_clone } );
    if ( !c.j_is_clone )
      for ( auto& j : without_one( c.j ) )
        out.push_back( { c.i, j, c.k, false } );
    return out;
  };
  p.show = []( AssocCase const& c ) {
    return "I=" + to_string( c.i ) + " J=" + to_string( c.j ) + ( c.j_is_clone ? " (clone levels)" : "" ) + " K=" + to_string( c.k );
  };
  run_property( p, cases, rng, result );
  return result;
}

// -- invariant pairs --------------------------------------------------------

struct InvariantPairCase
{
  FiniteFunction f;
  CloneSpec clone;
  Relation r, s;
};

inline SuiteResult suite_invariant_pairs( std::uint64_t seed, std::size_t cases )
{
  auto result = started( "lemma1", seed );
  Rng rng( seed );
  Property<InvariantPairCase> p;
  p.name = "generated antecedent";
  p.generate = []( Rng& r ) {
    auto f = random_function( r, r.between( 1, 2 ), boolean, boolean );
    auto clone = random_clone( r, boolean, 2, 2 );
    auto const m = r.between( 1, 2 );
    // At most two rows, so clone levels up to arity 2 reach every row of CR.
    auto rel = random_relation_at_most( r, m, boolean, 2 );
    auto s = random_relation( r, m, boolean );
    return InvariantPairCase{ std::move( f ), std::move( clone ), std::move( rel ), std::move( s ) };
  };
  p.check = []( InvariantPairCase const& c ) -> std::optional<std::string> {
    bool const direct = satisfies( c.f, Constraint( generate_invariant( c.clone, c.r ), c.s ) );
    auto const composed = compose( FunctionClass( boolean, boolean, { c.f } ), clone_levels( c.clone, 2 ) );
    bool const via_compositions = class_satisfies( composed, Constraint( c.r, c.s ) );
    if ( direct != via_compositions )
      return std::string( "f satisfies (CR,S): " ) + ( direct ? "yes" : "no" ) + ", fC satisfies (R,S): " + ( via_compositions ? "yes" : "no" );
    return std::nullopt;
  };
  p.shrink = []( InvariantPairCase const& c ) {
    std::vector<InvariantPairCase> out;
    for ( auto& r : without_one( c.r ) )
      out.push_back( { c.f, c.clone, r, c.s } );
    for ( auto& s : without_one( c.s ) )
      out.push_back( { c.f, c.clone, c.r, s } );
    for ( auto& g : without_one( c.clone.generators() ) )
      out.push_back( { c.f, CloneSpec( boolean, g ), c.r, c.s } );
    return out;
  };
  p.show = []( InvariantPairCase const& c ) {
    return "f=" + to_string( c.f ) + " " + show_clone( c.clone ) + " R=" + to_string( c.r ) + " S=" + to_string( c.s );
  };
  run_property( p, cases, rng, result );
  return result;
}

// -- minors -----------------------------------------------------------------

struct MinorCase
{
  FiniteFunction f;
  std::vector<Constraint> family;
  Scheme scheme;
  std::uint64_t relax_seed;
};

inline SuiteResult suite_minors( std::uint64_t seed, std::size_t cases, Budgets const& budgets )
{
  auto result = started( "minors", seed );
  Rng rng( seed );
  Property<MinorCase> p;
  p.name = "minor satisfaction";
  p.generate = []( Rng& r ) {
    auto f = random_function( r, r.between( 1, 2 ), boolean, boolean );
    bool const fitted = r.below( 4 ) != 0;
    std::vector<Constraint> family;
    std::vector<std::size_t> arities;
    auto const size = r.between( 1, 3 );
    for ( std::size_t j = 0; j < size; ++j )
    {
      auto const m = r.between( 1, 2 );
      auto ante = random_relation( r, m, boolean );
      // Usually pick the consequent so that f satisfies the member.
      auto cons = fitted ? random_superset( r, image( FunctionClass( boolean, boolean, { f } ), ante ) ) : random_relation( r, m, boolean );
      family.emplace_back( std::move( ante ), std::move( cons ) );
      arities.push_back( m );
    }
    auto scheme = random_scheme_for( r, arities, 2, 2 );
    return MinorCase{ std::move( f ), std::move( family ), std::move( scheme ), r.next() };
  };
  p.check = [budgets]( MinorCase const& c ) -> std::optional<std::string> {
    for ( auto const& member : c.family )
      if ( !satisfies( c.f, member ) )
        return std::nullopt;
    auto const tight = tight_minor_constraint( c.family, c.scheme, budgets );
    if ( !satisfies( c.f, tight ) )
      return "f violates the tight minor " + to_string( tight );
    Rng relax( c.relax_seed );
    for ( int i = 0; i < 3; ++i )
    {
      auto const relaxed = Constraint( random_subset( relax, tight.antecedent() ), random_superset( relax, tight.consequent() ) );
      if ( !is_conjunctive_minor( relaxed, c.family, c.scheme, budgets ) )
        return "relaxation " + to_string( relaxed ) + " of the tight minor is not a conjunctive minor";
      if ( !satisfies( c.f, relaxed ) )
        return "f violates the conjunctive minor " + to_string( relaxed );
    }
    return std::nullopt;
  };
  p.shrink = []( MinorCase const& c ) {
    std::vector<MinorCase> out;
    for ( std::size_t j = 0; c.family.size() > 1 && j < c.family.size(); ++j )
    {
      auto family = c.family;
      family.erase( family.begin() + static_cast<std::ptrdiff_t>( j ) );
      out.push_back( { c.f, std::move( family ), drop_map( c.scheme, j ), c.relax_seed } );
    }
    return out;
  };
  p.show = []( MinorCase const& c ) { return "f=" + to_string( c.f ) + " family=" + show_list( c.family ) + " scheme " + to_string( c.scheme ); };
  run_property( p, cases, rng, result );
  return result;
}

// -- invariant minors -------------------------------------------------------

struct InvariantMinorCase
{
  CloneSpec clone;
  std::vector<Relation> family;
  Scheme scheme;
};

inline SuiteResult suite_invariant_minors( std::uint64_t seed, std::size_t cases, Budgets const& budgets )
{
  auto result = started( "szabo", seed );
  Rng rng( seed );
  Property<InvariantMinorCase> p;
  p.name = "tight minors of invariants";
  p.generate = []( Rng& r ) {
    auto clone = random_clone( r, boolean, 3, 3 );
    std::vector<Relation> family;
    std::vector<std::size_t> arities;
    auto const size = r.between( 1, 3 );
    for ( std::size_t j = 0; j < size; ++j )
    {
      auto const n = r.between( 1, 3 );
      family.push_back( generate_invariant( clone, random_relation_at_most( r, n, boolean, 3 ) ) );
      arities.push_back( n );
    }
    auto scheme = random_scheme_for( r, arities, 2, 2 );
    return InvariantMinorCase{ std::move( clone ), std::move( family ), std::move( scheme ) };
  };
  p.check = [budgets]( InvariantMinorCase const& c ) -> std::optional<std::string> {
    for ( auto const& r : c.family )
      if ( !is_invariant( c.clone, r ) )
        return "generated family member " + to_string( r ) + " is not invariant";
    auto const tight = tight_minor( c.family, c.scheme, budgets );
    if ( !is_invariant( c.clone, tight ) )
      return "tight minor " + to_string( tight ) + " is not invariant";
    return std::nullopt;
  };
  p.shrink = []( InvariantMinorCase const& c ) {
    std::vector<InvariantMinorCase> out;
    for ( std::size_t j = 0; c.family.size() > 1 && j < c.family.size(); ++j )
    {
      auto family = c.family;
      family.erase( family.begin() + static_cast<std::ptrdiff_t>( j ) );
      out.push_back( { c.clone, std::move( family ), drop_map( c.scheme, j ) } );
    }
    return out;
  };
  p.show = []( InvariantMinorCase const& c ) { return show_clone( c.clone ) + " family=" + show_list( c.family ) + " scheme " + to_string( c.scheme ); };
  run_property( p, cases, rng, result );
  return result;
}

// -- relaxation -------------------------------------------------------------

struct RelaxationCase
{
  FiniteFunction f;
  Constraint base;
  Constraint relaxed;
  Constraint further;
  std::vector<Constraint> shared_antecedent;
};

inline SuiteResult suite_relaxation( std::uint64_t seed, std::size_t cases )
{
  auto result = started( "relaxation", seed );
  Rng rng( seed );
  Property<RelaxationCase> p;
  p.name = "relaxation";
  p.generate = []( Rng& r ) {
    auto f = random_function( r, r.between( 1, 2 ), boolean, boolean );
    auto const m = r.between( 1, 2 );
    auto ante = random_relation( r, m, boolean );
    Constraint base( ante, random_relation( r, m, boolean ) );
    auto relaxed = random_relaxation( r, base );
    auto further = random_relaxation( r, relaxed );
    std::vector<Constraint> family;
    auto const size = r.between( 1, 3 );
    for ( std::size_t j = 0; j < size; ++j )
      family.emplace_back( ante, random_relation( r, m, boolean ) );
    return RelaxationCase{ std::move( f ), std::move( base ), std::move( relaxed ), std::move( further ), std::move( family ) };
  };
  p.check = []( RelaxationCase const& c ) -> std::optional<std::string> {
    if ( !is_relaxation( c.relaxed, c.base ) || !is_relaxation( c.base, c.base ) )
      return "relaxation relation is not reflexive or misses a constructed relaxation";
    if ( !is_relaxation( c.further, c.base ) )
      return "relaxation is not transitive";
    if ( is_relaxation( c.base, c.relaxed ) && c.base != c.relaxed )
      return "relaxation is not antisymmetric";
    if ( satisfies( c.f, c.base ) && !satisfies( c.f, c.relaxed ) )
      return "satisfaction not inherited by a relaxation";
    bool const all = std::all_of( c.shared_antecedent.begin(), c.shared_antecedent.end(), [&]( auto const& x ) { return satisfies( c.f, x ); } );
    if ( all != satisfies( c.f, intersect_consequents( c.shared_antecedent ) ) )
      return "intersecting consequents changed satisfaction";
    return std::nullopt;
  };
  p.show = []( RelaxationCase const& c ) {
    return "f=" + to_string( c.f ) + " base=" + to_string( c.base ) + " relaxed=" + to_string( c.relaxed ) + " family=" + show_list( c.shared_antecedent );
  };
  run_property( p, cases, rng, result );
  return result;
}

// -- class closure ----------------------------------------------------------

inline void check_separations( SuiteResult& result, FunctionClass const& k, CloneSpec const& c1, CloneSpec const& c2, ArityCaps const& caps,
                               FunctionClass const& candidates, std::string const& label )
{
  auto const closed = stability_closure( k, c1, c2, caps );
  for ( auto const& g : candidates.members() )
  {
    auto const sep = separating_constraint( k, g, c1, c2, caps );
    if ( closed.contains( g ) )
    {
      expect( result, !sep.separator, label + ": member " + to_string( g ) + " was separated" );
      continue;
    }
    if ( !sep.separator )
    {
      expect( result, false, label + ": no separator for " + to_string( g ) );
      continue;
    }
    auto const& c = *sep.separator;
    expect( result, class_satisfies( closed, c ), label + ": closed class violates the separator for " + to_string( g ) );
    expect( result, !satisfies( g, c ), label + ": " + to_string( g ) + " satisfies its separator" );
    expect( result, is_invariant_constraint( c, c1, c2 ), label + ": separator for " + to_string( g ) + " is not a (C1,C2)-constraint" );
  }
}

inline SuiteResult suite_class_closure( std::uint64_t seed, std::size_t random_cases, std::optional<ArityCaps> caps_override, Budgets const& budgets )
{
  auto result = started( "theorem1", seed );
  auto const caps = caps_override.value_or( ArityCaps{ 2, 4 } );
  caps.validate();
  if ( !threshold_met( 2, caps.fn_arity_cap, caps.rel_arity_cap ) )
    throw UsageError( "theorem1 needs rel-cap >= 2^fn-cap for exact separation" );

  CloneSpec const p( boolean );
  FiniteFunction const conj( 2, boolean, boolean, { 0, 0, 0, 1 } );
  ArityCaps const wide{ std::max<std::size_t>( caps.fn_arity_cap, 3 ), caps.rel_arity_cap };

  std::vector<std::pair<std::string, FunctionClass>> curated{
      { "projections", projections_up_to( boolean, caps.fn_arity_cap ) },
      { "minors of and", stability_closure( FunctionClass( boolean, boolean, { conj } ), p, p, caps ) },
      { "minors of triple sum",
        stability_closure( FunctionClass( boolean, boolean, { boolean_triple_sum() } ), p, p, wide ).up_to( caps.fn_arity_cap ) },
      { "all functions", all_functions( boolean, boolean, caps.fn_arity_cap, budgets ) } };
  auto const everything = all_functions( boolean, boolean, caps.fn_arity_cap, budgets );

  for ( auto const& [label, k] : curated )
  {
    expect( result, stability_closure( k, p, p, caps ) == k, label + ": curated class is not stable" );
    auto const report = closure_of_class( k, p, p, caps, budgets );
    expect( result, report.exact_within_caps, label + ": closure not flagged exact" );
    expect( result, report.closed == k, label + ": closure " + to_string( report.closed ) + " differs from the class" );
    expect( result, double_dual_of_class( k, p, p, caps, budgets ) == k, label + ": double dual differs from the class" );
    check_separations( result, k, p, p, caps, everything, label );
  }

  // Random clone pairs and classes: every outside function must be separated.
  Rng rng( seed );
  for ( std::size_t i = 0; i < random_cases; ++i )
  {
    auto const c1 = random_clone( rng, boolean, 2, 2 );
    auto const c2 = random_clone( rng, boolean, 2, 2 );
    auto const k = random_class( rng, boolean, boolean, caps.fn_arity_cap, 2 );
    auto const label = "random #" + std::to_string( i ) + " " + show_clone( c1 ) + " " + show_clone( c2 ) + " K=" + to_string( k );
    check_separations( result, k, c1, c2, caps, everything, label );
  }
  return result;
}

// -- constraint closure -----------------------------------------------------

inline SuiteResult suite_constraint_closure( std::uint64_t seed, std::size_t sets, std::optional<ArityCaps> caps_override, Budgets const& budgets )
{
  auto result = started( "theorem3", seed );
  auto const caps = caps_override.value_or( ArityCaps{ 2, 2 } );
  caps.validate();
  CloneSpec const p( boolean );

  std::vector<Constraint> pool;
  for ( std::size_t m = 1; m <= caps.rel_arity_cap; ++m )
  {
    auto const rels = enumerate_invariants( p, m, budgets );
    for ( auto const& r : rels )
      for ( auto const& s : rels )
        pool.emplace_back( r, s );
  }

  Rng rng( seed );
  for ( std::size_t i = 0; i < sets; ++i )
  {
    ConstraintSet t0( boolean, boolean );
    auto const size = rng.between( 1, 3 );
    for ( std::size_t j = 0; j < size; ++j )
      t0.insert( pool[rng.below( pool.size() )] );
    auto const label = "T0 #" + std::to_string( i ) + " " + show_list( t0.members() );

    auto const closure = closure_of_constraints( t0, p, p, caps, budgets );
    auto const again = closure_of_constraints( closure.closed, p, p, caps, budgets );
    expect( result, again.closed == closure.closed, label + ": closure is not idempotent" );
    expect( result, t0.is_subset_of( closure.closed ), label + ": closure misses a member of T0" );
    if ( caps.rel_arity_cap >= 2 )
      expect( result, closure.closed.contains( make_equality( boolean, boolean ) ), label + ": closure misses the equality constraint" );
    for ( std::size_t m = 1; m <= caps.rel_arity_cap; ++m )
      expect( result, closure.closed.contains( make_empty( boolean, boolean, m ) ), label + ": closure misses the empty constraint" );

    auto const minors = check_minor_closure( closure.closed, p, p, caps, rng.next(), 200, budgets );
    expect( result, minors.holds(), label + ": closure not minor-closed: " + minors.counterexample.value_or( "" ) );
    expect( result, minors.consistent(), label + ": minor-closure equivalence inconsistent" );
  }
  return result;
}

// -- L01 --------------------------------------------------------------------

inline SuiteResult suite_l01( std::uint64_t seed, std::size_t classes, std::optional<ArityCaps> caps_override, Budgets const& budgets )
{
  auto result = started( "L01", seed );
  auto const caps = caps_override.value_or( ArityCaps{ 3, 8 } );
  caps.validate();
  auto const l01 = l01_clone();
  auto const levels = clone_levels( l01, caps.fn_arity_cap );
  auto const everything = all_functions( boolean, boolean, caps.fn_arity_cap, budgets );

  auto const agree = [&]( FunctionClass const& k, std::string const& label ) {
    bool const fixed = closure_of_class( k, l01, l01, caps, budgets ).closed == k;
    bool const stable = is_stable_right( k, levels, caps ) && is_stable_left( k, levels, caps );
    expect( result, fixed == stable,
            label + ": closure fixes K = " + ( fixed ? "yes" : "no" ) + " but stable under L01 = " + ( stable ? "yes" : "no" ) );
    return fixed;
  };

  Rng rng( seed );
  for ( std::size_t i = 0; i < classes; ++i )
  {
    auto const k = random_class( rng, boolean, boolean, caps.fn_arity_cap, 2 );
    auto const label = "K #" + std::to_string( i ) + " " + to_string( k );
    agree( k, label );
    auto const closed = stability_closure( k, l01, l01, caps );
    expect( result, closure_of_class( k, l01, l01, caps, budgets ).closed == closed, label + ": closure differs from the stability closure" );
    expect( result, agree( closed, label + " (stability closure)" ), label + ": stability closure is not fixed by the closure" );
    // A sample of candidates keeps the suite at desk scale.
    std::vector<FiniteFunction> sample;
    for ( int j = 0; j < 24; ++j )
      sample.push_back( everything.members()[rng.below( everything.size() )] );
    check_separations( result, k, l01, l01, caps, FunctionClass( boolean, boolean, std::move( sample ) ), label );
  }
  return result;
}

} // namespace detail

/// Runs a named suite.  Throws UsageError for an unknown name.
inline SuiteResult verify( std::string const& suite, std::uint64_t seed, VerifyOptions const& options = {} )
{
  auto const start = std::chrono::steady_clock::now();
  auto const cases = [&]( std::size_t fallback ) { return options.cases.value_or( fallback ); };

  SuiteResult result;
  if ( suite == "assoc" )
    result = detail::suite_assoc( seed, cases( 500 ) );
  else if ( suite == "lemma1" )
    result = detail::suite_invariant_pairs( seed, cases( 500 ) );
  else if ( suite == "minors" )
    result = detail::suite_minors( seed, cases( 500 ), options.budgets );
  else if ( suite == "szabo" )
    result = detail::suite_invariant_minors( seed, cases( 500 ), options.budgets );
  else if ( suite == "relaxation" )
    result = detail::suite_relaxation( seed, cases( 500 ) );
  else if ( suite == "theorem1" )
    result = detail::suite_class_closure( seed, cases( 20 ), options.caps, options.budgets );
  else if ( suite == "theorem3" )
    result = detail::suite_constraint_closure( seed, cases( 5 ), options.caps, options.budgets );
  else if ( suite == "L01" )
    result = detail::suite_l01( seed, cases( 10 ), options.caps, options.budgets );
  else
    throw UsageError( "unknown suite '" + suite + "'" );

  result.wall_seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  return result;
}

/// Deterministic text form (wall time excluded).
inline std::string format_suite_result( SuiteResult const& r )
{
  std::ostringstream out;
  out << "suite " << r.name << " seed " << r.seed << " cases " << r.cases << " failures " << r.failures.size() << "\n";
  for ( auto const& f : r.failures )
    out << "FAIL " << f << "\n";
  out << ( r.passed() ? "PASS" : "FAILED" ) << "\n";
  return out.str();
}

} // namespace clonecraft
