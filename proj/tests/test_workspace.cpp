#include <catch_amalgamated.hpp>

#include <clonecraft/workspace.hpp>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace clonecraft;
using namespace support;

namespace
{

std::string message_of( std::string const& text )
{
  try
  {
    parse_workspace( text );
  }
  catch ( ParseError const& e )
  {
    return e.what();
  }
  return "";
}

std::size_t line_of( std::string const& text )
{
  try
  {
    parse_workspace( text );
  }
  catch ( ParseError const& e )
  {
    return e.line();
  }
  return 0;
}

std::string digits_of( Tuple const& t )
{
  std::string out;
  for ( auto e : t )
    out += static_cast<char>( '0' + e );
  return out;
}

/// A random well-formed workspace text over domains of sizes 2 and 3.
std::string random_workspace( detail::Rng& rng )
{
  std::ostringstream out;
  out << "domain B 2\ndomain T 3\n";
  std::vector<std::string> bfuns;
  for ( std::size_t i = 0, n = rng.between( 1, 4 ); i < n; ++i )
  {
    auto const f = random_function( rng, rng.between( 1, 3 ) );
    out << "function f" << i << " B B " << f.arity() << " " << digits_of( f.table() ) << "\n";
    bfuns.push_back( "f" + std::to_string( i ) );
  }
  out << "function g T B 1 " << digits_of( random_function( rng, 1, three, two ).table() ) << "\n";
  std::vector<std::pair<std::string, std::size_t>> rels;
  for ( std::size_t i = 0, n = rng.between( 1, 4 ); i < n; ++i )
  {
    auto const r = random_relation( rng, rng.between( 1, 3 ) );
    out << "relation r" << i << " B " << r.arity() << " {";
    for ( std::size_t j = 0; j < r.rows().size(); ++j )
      out << ( j ? "," : "" ) << digits_of( r.rows()[j] );
    out << "}\n";
    rels.emplace_back( "r" + std::to_string( i ), r.arity() );
  }
  out << "clone c B generators=" << bfuns.front() << "\n";
  out << "clone p B generators=\n";
  out << "class k B B members=";
  for ( std::size_t i = 0; i < bfuns.size(); ++i )
    out << ( i ? "," : "" ) << bfuns[i];
  out << "\n";
  for ( std::size_t i = 0; i < rels.size(); ++i )
    for ( std::size_t j = 0; j < rels.size(); ++j )
      if ( rels[i].second == rels[j].second && rng.coin() )
        out << "constraint c" << i << "_" << j << " " << rels[i].first << " " << rels[j].first << "\n";
  out << "scheme s target=2 vars=1 maps=[t0,v0;t1]\n";
  return out.str();
}

} // namespace

TEST_CASE( "a single function", "[workspace]" )
{
  auto const ws = parse_workspace( "domain A 2\nfunction and A A 2 0001" );
  REQUIRE( ws.functions.size() == 1 );
  CHECK( ws.functions.at( "and" ).function == conj );
  CHECK( ws.domains.at( "A" ) == two );
}

TEST_CASE( "a relation", "[workspace]" )
{
  auto const ws = parse_workspace( "domain A 2\nrelation leq A 2 {00,01,11}\nrelation none A 3 {}" );
  CHECK( ws.relations.at( "leq" ).relation == leq );
  CHECK( ws.relations.at( "none" ).relation == Relation( 3, two ) );
}

TEST_CASE( "table length is checked against the arity", "[workspace]" )
{
  auto const text = "domain A 2\nfunction bad A A 2 001";
  CHECK_THROWS_AS( parse_workspace( text ), ParseError );
  auto const message = message_of( text );
  CHECK( message.find( "bad" ) != std::string::npos );
  CHECK( message.find( "table length 3 != 4" ) != std::string::npos );
  CHECK( line_of( text ) == 2 );
}

TEST_CASE( "syntax errors carry line numbers", "[workspace]" )
{
  CHECK( line_of( "domain A 2\n\n# comment\nwidget x" ) == 4 );
  CHECK( line_of( "domain A two" ) == 1 );
  CHECK( line_of( "domain A 2\nrelation r A 2 {0}" ) == 2 );
  CHECK( line_of( "domain A 2\nrelation r A 1 {2}" ) == 2 );
  CHECK( line_of( "domain A 2\nscheme s target=1 vars=0 maps=[t1]" ) == 2 );
  CHECK( line_of( "domain A 11" ) == 1 );
  CHECK( line_of( "domain A 2\nfunction f A A 1" ) == 2 );
}

TEST_CASE( "names are unique per kind", "[workspace]" )
{
  auto const text = "domain A 2\nfunction f A A 1 01\nfunction f A A 1 10";
  CHECK_THROWS_AS( parse_workspace( text ), ParseError );
  CHECK( line_of( text ) == 3 );
  CHECK( message_of( text ).find( "f" ) != std::string::npos );
  // Different kinds may share a name.
  CHECK_NOTHROW( parse_workspace( "domain A 2\nfunction x A A 1 01\nrelation x A 1 {0}" ) );
}

TEST_CASE( "references resolve after the whole file is read", "[workspace]" )
{
  auto const ws = parse_workspace( "clone c A generators=n\nfunction n A A 1 10\ndomain A 2\n"
                                   "constraint e r r\nrelation r A 2 {00,11}" );
  CHECK( ws.clones.at( "c" ).spec.generators() == cls( { neg } ) );
  CHECK( ws.constraints.at( "e" ).constraint == make_equality( two, two ) );

  CHECK_THROWS_AS( parse_workspace( "domain A 2\nclone c A generators=missing" ), ParseError );
  CHECK_THROWS_AS( parse_workspace( "function f A A 1 01" ), ParseError );
  CHECK_THROWS_AS( parse_workspace( "domain A 2\ndomain T 3\nfunction f T T 1 012\nclass k A A members=f" ), ParseError );
  CHECK_THROWS_AS( parse_workspace( "domain A 2\nrelation r A 1 {0}\nrelation s A 2 {00}\nconstraint c r s" ), ParseError );
}

TEST_CASE( "schemes", "[workspace]" )
{
  auto const ws = parse_workspace( "scheme s target=2 vars=1 maps=[t0,v0;v0,t1]" );
  auto const& s = ws.schemes.at( "s" );
  CHECK( s.target() == 2 );
  CHECK( s.indeterminates() == 1 );
  CHECK( s.maps() == std::vector<SchemeMap>{ { SchemeSlot::target( 0 ), SchemeSlot::var( 0 ) }, { SchemeSlot::var( 0 ), SchemeSlot::target( 1 ) } } );
}

TEST_CASE( "the sample workspace parses and round trips", "[workspace]" )
{
  std::ifstream in( CLONECRAFT_SAMPLE_WORKSPACE );
  REQUIRE( in );
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto const ws = parse_workspace( buffer.str() );
  CHECK( ws.functions.size() == 10 );
  CHECK( ws.clones.at( "l01" ).spec.generators() == cls( { xor3 } ) );
  CHECK( ws.classes.at( "mono1" ).cls == cls( { ident, const0, const1 } ) );
  CHECK( parse_workspace( format_workspace( ws ) ) == ws );
}

TEST_CASE( "formatting inverts parsing", "[workspace][property]" )
{
  detail::Rng rng( 83 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    auto const ws = parse_workspace( random_workspace( rng ) );
    auto const text = format_workspace( ws );
    REQUIRE( parse_workspace( text ) == ws );
    REQUIRE( format_workspace( parse_workspace( text ) ) == text );
  }
}
