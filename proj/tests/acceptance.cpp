#include <clonecraft/verify.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>

#include "golden_support.hpp"

// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Usage: acceptance <clonecraft> <golden-dir>

using namespace clonecraft;

namespace
{

DomainSize const two( 2 );

FiniteFunction fn( std::size_t arity, Tuple table ) { return FiniteFunction( arity, two, two, std::move( table ) ); }

FiniteFunction const conj = fn( 2, { 0, 0, 0, 1 } );
FiniteFunction const disj = fn( 2, { 0, 1, 1, 1 } );
FiniteFunction const neg = fn( 1, { 1, 0 } );
FiniteFunction const const0 = fn( 1, { 0, 0 } );
FiniteFunction const const1 = fn( 1, { 1, 1 } );
FiniteFunction const xor3 = fn( 3, { 0, 1, 1, 0, 1, 0, 0, 1 } );

CloneSpec clone_of( std::vector<FiniteFunction> generators ) { return CloneSpec( two, FunctionClass( two, two, std::move( generators ) ) ); }

/// Every relation of the given arity on {0,1}.
std::vector<Relation> all_relations( std::size_t arity )
{
  auto const points = std::size_t( 1 ) << arity;
  std::vector<Relation> out;
  for ( std::uint64_t mask = 0; mask < ( std::uint64_t( 1 ) << points ); ++mask )
  {
    std::vector<Tuple> rows;
    for ( std::size_t p = 0; p < points; ++p )
      if ( mask >> p & 1 )
        rows.push_back( decode_point( p, arity, two ).entries() );
    out.emplace_back( arity, two, std::move( rows ) );
  }
  return out;
}

struct Verdict
{
  bool ok = true;
  std::string detail;
};

Verdict from_suite( SuiteResult const& r, std::size_t min_cases )
{
  Verdict v{ r.passed() && r.cases >= min_cases, std::to_string( r.cases ) + " cases, " + std::to_string( r.failures.size() ) + " failures" };
  if ( !r.failures.empty() )
    v.detail += "; first: " + r.failures.front();
  return v;
}

Verdict triple_sum()
{
  FunctionClass const f( two, two, { xor3 } );
  std::size_t checked = 0, failed = 0;
  for ( std::size_t m = 1; m <= 3; ++m )
    for ( auto const& r : all_relations( m ) )
    {
      ++checked;
      failed += !r.is_subset_of( image( f, r ) );
    }
  return { checked == 276 && failed == 0, std::to_string( checked ) + " relations, " + std::to_string( failed ) + " failures" };
}

Verdict generated_invariant()
{
  auto const monotone = clone_of( { conj, disj, const0, const1 } );
  Relation const single( 2, two, { Tuple{ 0, 1 } } );
  Relation const expected( 2, two, { Tuple{ 0, 0 }, Tuple{ 0, 1 }, Tuple{ 1, 1 } } );
  bool ok = generate_invariant( monotone, single ) == expected;
  std::size_t idempotent = 0, monotonic = 0;
  auto const relations = all_relations( 2 );
  for ( auto const& r : relations )
  {
    auto const g = generate_invariant( monotone, r );
    idempotent += generate_invariant( monotone, g ) == g;
    bool mono = true;
    for ( auto const& s : relations )
      if ( r.is_subset_of( s ) && !g.is_subset_of( generate_invariant( monotone, s ) ) )
        mono = false;
    monotonic += mono;
  }
  ok = ok && idempotent == 16 && monotonic == 16;
  return { ok, "idempotent " + std::to_string( idempotent ) + "/16, monotone " + std::to_string( monotonic ) + "/16" };
}

Verdict clone_generation()
{
  auto const all = generate_clone_level( clone_of( { conj, neg } ), 2 ).size();
  auto const lattice = generate_clone_level( clone_of( { conj, disj } ), 2 ).size();
  auto const l01 = generate_clone_level( clone_of( { xor3 } ), 3 );
  auto expected = projections( two, 3 );
  expected = unite( expected, FunctionClass( two, two, { xor3 } ) );
  bool const ok = all == 16 && lattice == 4 && l01 == expected && l01.size() == 4;
  return { ok, "sizes " + std::to_string( all ) + ", " + std::to_string( lattice ) + ", " + std::to_string( l01.size() ) };
}

Verdict golden_corpus( std::string const& binary, std::string const& dir )
{
  auto const cases = golden::load_cases( dir );
  std::size_t failing = 0;
  std::string first;
  for ( auto const& c : cases )
  {
    auto const problems = golden::check_case( binary, dir, c );
    if ( !problems.empty() && first.empty() )
      first = problems.front();
    failing += !problems.empty();
  }
  Verdict v{ cases.size() >= 20 && failing == 0, std::to_string( cases.size() ) + " invocations, " + std::to_string( failing ) + " failing" };
  if ( !first.empty() )
    v.detail += "; first: " + first;
  return v;
}

} // namespace

int main( int argc, char** argv )
{
  if ( argc < 3 )
  {
    std::cerr << "usage: acceptance <clonecraft> <golden-dir>\n";
    return 2;
  }
  std::string const binary = argv[1];
  std::string const dir = argv[2];

  struct Criterion
  {
    int number;
    std::string name;
    double limit_seconds;
    std::function<Verdict()> run;
  };
  std::vector<Criterion> const criteria{
      { 1, "associativity suite", 30, [] { return from_suite( verify( "assoc", 42 ), 500 ); } },
      { 2, "triple sum images", 5, triple_sum },
      { 3, "generated invariant", 5, generated_invariant },
      { 4, "clone generation", 5, clone_generation },
      { 5, "tight minors are invariant", 60, [] { return from_suite( verify( "szabo", 42 ), 500 ); } },
      { 6, "minor satisfaction", 60, [] { return from_suite( verify( "minors", 42 ), 500 ); } },
      { 7, "exact class round trip", 120, [] { return from_suite( verify( "theorem1", 42 ), 1 ); } },
      { 8, "constraint closure laws", 120, [] { return from_suite( verify( "theorem3", 42 ), 5 ); } },
      { 9, "affine stability agreement", 120, [] { return from_suite( verify( "L01", 42 ), 10 ); } },
      { 10, "CLI determinism", 30, [&] { return golden_corpus( binary, dir ); } },
  };

  int failures = 0;
  for ( auto const& c : criteria )
  {
    auto const start = std::chrono::steady_clock::now();
    Verdict v;
    try
    {
      v = c.run();
    }
    catch ( std::exception const& e )
    {
      v = { false, std::string( "exception: " ) + e.what() };
    }
    double const seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    bool const in_time = seconds < c.limit_seconds;
    bool const pass = v.ok && in_time;
    failures += !pass;
    std::cout << ( pass ? "PASS" : "FAIL" ) << " criterion " << c.number << " " << c.name << ": " << v.detail << " (" << std::fixed
              << std::setprecision( 2 ) << seconds << " s, limit " << std::setprecision( 0 ) << c.limit_seconds << " s"
              << ( in_time ? "" : ", over the limit" ) << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
