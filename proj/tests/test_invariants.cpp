#include <catch_amalgamated.hpp>

#include <clonecraft/invariants.hpp>

#include "support.hpp"

using namespace clonecraft;
using namespace support;

namespace
{

CloneSpec clone_of( std::initializer_list<FiniteFunction> generators ) { return CloneSpec( two, cls( generators ) ); }

Relation from_set( std::size_t arity, std::set<Tuple> const& rows, DomainSize dom = two )
{
  return Relation( arity, dom, std::vector<Tuple>( rows.begin(), rows.end() ) );
}

/// Fixpoint of R under the naive image of the generators.
Relation naive_generate( CloneSpec const& spec, Relation const& r )
{
  auto current = r;
  while ( true )
  {
    auto rows = naive_image( spec.generators(), current );
    rows.insert( current.rows().begin(), current.rows().end() );
    auto next = from_set( r.arity(), rows, r.dom() );
    if ( next == current )
      return current;
    current = next;
  }
}

} // namespace

TEST_CASE( "image", "[invariants]" )
{
  CHECK( image( cls( { neg } ), rel( 2, { "00", "01" } ) ) == rel( 2, { "11", "10" } ) );
  CHECK( image( cls( { xor3 } ), rel( 2, { "01", "10" } ) ) == rel( 2, { "01", "10" } ) );
  CHECK( image( FunctionClass( two, two ), leq ).empty() );
  CHECK( image( cls( { conj } ), Relation( 2, two ) ).empty() );
  CHECK_THROWS_AS( image( cls( { neg } ), rel( 1, { "0" }, three ) ), DomainMismatch );
  // A-to-B image lands on the codomain.
  auto const to_three = fn( 1, "02", two, three );
  CHECK( image( cls( { to_three }, two, three ), rel( 1, { "1" } ) ) == rel( 1, { "2" }, three ) );
}

TEST_CASE( "image agrees with enumerating argument rows", "[invariants][property]" )
{
  detail::Rng rng( 31 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    std::vector<FiniteFunction> fs;
    for ( std::size_t i = 0, n = rng.between( 0, 3 ); i < n; ++i )
      fs.push_back( random_function( rng, rng.between( 1, 3 ) ) );
    FunctionClass const f( two, two, fs );
    auto const r = random_relation( rng, rng.between( 1, 3 ) );
    REQUIRE( image( f, r ) == from_set( r.arity(), naive_image( f, r ) ) );
  }
}

TEST_CASE( "triple sum image contains every small relation", "[invariants]" )
{
  auto const f = cls( { xor3 } );
  std::size_t checked = 0;
  for ( std::size_t m = 1; m <= 3; ++m )
  {
    for ( auto const& r : all_relations( m ) )
    {
      REQUIRE( r.is_subset_of( image( f, r ) ) );
      ++checked;
    }
  }
  CHECK( checked == 276 );
}

TEST_CASE( "preservation", "[invariants]" )
{
  CHECK( preserves( neg, rel( 2, { "01", "10" } ) ) );
  CHECK_FALSE( preserves( neg, rel( 2, { "00" } ) ) );
  CHECK( preserves( conj, leq ) );
  CHECK_THROWS_AS( preserves( fn( 1, "01", two, three ), leq ), DomainMismatch );
}

TEST_CASE( "invariance checks generators", "[invariants]" )
{
  CHECK( is_invariant( clone_of( { neg } ), rel( 2, { "01", "10" } ) ) );
  CHECK( is_invariant( clone_of( { conj, disj } ), leq ) );
  CHECK_FALSE( is_invariant( clone_of( { neg } ), rel( 2, { "00" } ) ) );
  CHECK_THROWS_AS( is_invariant( CloneSpec( three ), leq ), DomainMismatch );
}

TEST_CASE( "generated invariants", "[invariants]" )
{
  detail::Rng rng( 2 );
  for ( int i = 0; i < 20; ++i )
  {
    auto const r = random_relation( rng, rng.between( 1, 3 ) );
    REQUIRE( generate_invariant( CloneSpec( two ), r ) == r );
  }
  CHECK( generate_invariant( clone_of( { conj, disj, const0, const1 } ), rel( 2, { "01" } ) ) == leq );
  CHECK( generate_invariant( clone_of( { neg } ), rel( 2, { "00" } ) ) == rel( 2, { "00", "11" } ) );
  CHECK_THROWS_AS( generate_invariant( CloneSpec( three ), leq ), DomainMismatch );
}

TEST_CASE( "generated invariants over all binary relations", "[invariants]" )
{
  auto const monotone = clone_of( { conj, disj, const0, const1 } );
  auto const relations = all_relations( 2 );
  for ( auto const& r : relations )
  {
    auto const g = generate_invariant( monotone, r );
    REQUIRE( g == naive_generate( monotone, r ) );
    REQUIRE( generate_invariant( monotone, g ) == g );
    REQUIRE( is_invariant( monotone, g ) );
    for ( auto const& s : relations )
      if ( r.is_subset_of( s ) )
        REQUIRE( g.is_subset_of( generate_invariant( monotone, s ) ) );
  }
}

TEST_CASE( "generated invariant laws on random clones", "[invariants][property]" )
{
  detail::Rng rng( 8 );
  for ( int trial = 0; trial < 150; ++trial )
  {
    std::vector<FiniteFunction> gens;
    for ( std::size_t i = 0, n = rng.between( 0, 3 ); i < n; ++i )
      gens.push_back( random_function( rng, rng.between( 1, 3 ) ) );
    CloneSpec const spec( two, FunctionClass( two, two, gens ) );
    auto const r = random_relation( rng, rng.between( 1, 3 ) );
    auto const g = generate_invariant( spec, r );
    REQUIRE( r.is_subset_of( g ) );
    REQUIRE( is_invariant( spec, g ) );
    REQUIRE( g == naive_generate( spec, r ) );
  }
}

TEST_CASE( "generators suffice for invariance", "[invariants][property]" )
{
  detail::Rng rng( 12 );
  for ( int trial = 0; trial < 60; ++trial )
  {
    std::vector<FiniteFunction> gens;
    for ( std::size_t i = 0, n = rng.between( 1, 2 ); i < n; ++i )
      gens.push_back( random_function( rng, rng.between( 1, 3 ) ) );
    CloneSpec const spec( two, FunctionClass( two, two, gens ) );
    auto const r = random_relation( rng, rng.between( 1, 3 ) );
    REQUIRE( is_invariant( spec, r ) == naive_preserves_all( clone_levels( spec, 3 ), r ) );
  }
}

TEST_CASE( "intersections of invariants are invariant", "[invariants][property]" )
{
  detail::Rng rng( 13 );
  for ( int trial = 0; trial < 100; ++trial )
  {
    CloneSpec const spec( two, cls( { random_function( rng, rng.between( 1, 3 ) ) } ) );
    auto const m = rng.between( 1, 3 );
    auto const a = generate_invariant( spec, random_relation( rng, m ) );
    auto const b = generate_invariant( spec, random_relation( rng, m ) );
    REQUIRE( is_invariant( spec, intersection( a, b ) ) );
  }
}

TEST_CASE( "enumerating invariants", "[invariants]" )
{
  auto const unary = enumerate_invariants( CloneSpec( two ), 1 );
  CHECK( unary.size() == 4 );
  CHECK( enumerate_invariants( clone_of( { neg } ), 1 ) == std::vector<Relation>{ Relation( 1, two ), Relation::full( 1, two ) } );

  auto const monotone = clone_of( { conj, disj, const0, const1 } );
  auto const binary = enumerate_invariants( monotone, 2 );
  CHECK( std::find( binary.begin(), binary.end(), leq ) != binary.end() );
  std::vector<Relation> filtered;
  for ( auto const& r : all_relations( 2 ) )
    if ( naive_preserves_all( monotone.generators(), r ) )
      filtered.push_back( r );
  std::sort( filtered.begin(), filtered.end() );
  CHECK( binary == filtered );
  CHECK( std::is_sorted( binary.begin(), binary.end() ) );
}

TEST_CASE( "invariant enumeration respects its budget", "[invariants]" )
{
  Budgets tight;
  tight.max_subsets = 100;
  CHECK_THROWS_AS( enumerate_invariants( CloneSpec( two ), 3, tight ), BudgetExceeded );
  try
  {
    enumerate_invariants( CloneSpec( two ), 3, tight );
  }
  catch ( BudgetExceeded const& e )
  {
    CHECK( e.budget() == "max-subsets" );
    CHECK( std::string( e.what() ).find( "budget is 100" ) != std::string::npos );
  }
  CHECK_THROWS_AS( enumerate_invariants( CloneSpec( two ), 6 ), BudgetExceeded );
}

TEST_CASE( "invariant enumeration is independent of the thread count", "[invariants]" )
{
  Budgets threaded;
  threaded.threads = 4;
  auto const spec = clone_of( { fn( 3, "00010111" ) } );
  CHECK( enumerate_invariants( spec, 3, threaded ) == enumerate_invariants( spec, 3 ) );
}
