#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "classes.hpp"
#include "constraints.hpp"
#include "core.hpp"
#include "minors.hpp"

/*!
  \file workspace.hpp
  \brief Line-oriented workspace files.

  One declaration per line; `#` starts a comment.

      domain <name> <size>
      function <name> <domA> <domB> <arity> <table-digits>
      relation <name> <dom> <arity> {t1,t2,...}
      clone <name> <dom> generators=<f1,f2,...>
      class <name> <domA> <domB> members=<f1,...>
      constraint <name> <antecedent-rel> <consequent-rel>
      scheme <name> target=<m> vars=<k> maps=[<h1>;<h2>;...]

  Tables and tuples are digit strings (domains of size at most 10).  A scheme
  map is a comma list of `t<i>` (target coordinate) and `v<i>` (indeterminate).
  References may point forward; they are resolved after the whole file is read.
*/

namespace clonecraft
{

class ParseError : public Error
{
public:
  ParseError( std::size_t line, std::string const& message )
      : Error( ( line ? "line " + std::to_string( line ) + ": " : std::string() ) + message ), line_( line )
  {
  }
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

struct FunctionDecl
{
  std::string dom, cod;
  FiniteFunction function;
  friend bool operator==( FunctionDecl const&, FunctionDecl const& ) = default;
};

struct RelationDecl
{
  std::string dom;
  Relation relation;
  friend bool operator==( RelationDecl const&, RelationDecl const& ) = default;
};

struct CloneDecl
{
  std::string dom;
  std::vector<std::string> generators;
  CloneSpec spec;
  friend bool operator==( CloneDecl const&, CloneDecl const& ) = default;
};

struct ClassDecl
{
  std::string dom, cod;
  std::vector<std::string> members;
  FunctionClass cls;
  friend bool operator==( ClassDecl const&, ClassDecl const& ) = default;
};

struct ConstraintDecl
{
  std::string antecedent, consequent;
  Constraint constraint;
  friend bool operator==( ConstraintDecl const&, ConstraintDecl const& ) = default;
};

struct Workspace
{
  std::map<std::string, DomainSize> domains;
  std::map<std::string, FunctionDecl> functions;
  std::map<std::string, RelationDecl> relations;
  std::map<std::string, CloneDecl> clones;
  std::map<std::string, ClassDecl> classes;
  std::map<std::string, ConstraintDecl> constraints;
  std::map<std::string, Scheme> schemes;

  friend bool operator==( Workspace const&, Workspace const& ) = default;
};

namespace detail
{

inline constexpr std::size_t max_workspace_domain = 10;

struct RawLine
{
  std::size_t line;
  std::vector<std::string> words;
};

inline std::vector<std::string> split( std::string_view text, char sep )
{
  std::vector<std::string> parts;
  std::size_t start = 0;
  while ( true )
  {
    auto const pos = text.find( sep, start );
    parts.emplace_back( text.substr( start, pos - start ) );
    if ( pos == std::string_view::npos )
      break;
    start = pos + 1;
  }
  return parts;
}

inline bool valid_name( std::string_view name )
{
  if ( name.empty() || !( std::isalpha( static_cast<unsigned char>( name[0] ) ) || name[0] == '_' ) )
    return false;
  for ( char c : name )
    if ( !( std::isalnum( static_cast<unsigned char>( c ) ) || c == '_' || c == '-' || c == '.' ) )
      return false;
  return true;
}

inline std::size_t parse_count( std::string const& word, std::size_t line, std::string const& what )
{
  if ( word.empty() || word.size() > 9 || !std::all_of( word.begin(), word.end(), []( char c ) { return std::isdigit( static_cast<unsigned char>( c ) ); } ) )
    throw ParseError( line, what + " must be a nonnegative integer, got '" + word + "'" );
  return std::stoul( word );
}

inline Tuple parse_digits( std::string_view digits, std::size_t line )
{
  Tuple out;
  for ( char c : digits )
  {
    if ( !std::isdigit( static_cast<unsigned char>( c ) ) )
      throw ParseError( line, std::string( "expected a digit, got '" ) + c + "'" );
    out.push_back( static_cast<Element>( c - '0' ) );
  }
  return out;
}

/// `key=value` with the expected key.
inline std::string keyed( std::string const& word, std::string const& key, std::size_t line )
{
  auto const prefix = key + "=";
  if ( word.rfind( prefix, 0 ) != 0 )
    throw ParseError( line, "expected '" + prefix + "...', got '" + word + "'" );
  return word.substr( prefix.size() );
}

inline std::vector<std::string> name_list( std::string const& text, std::size_t line )
{
  std::vector<std::string> names;
  if ( text.empty() )
    return names;
  for ( auto& n : split( text, ',' ) )
  {
    if ( !valid_name( n ) )
      throw ParseError( line, "invalid name '" + n + "'" );
    names.push_back( std::move( n ) );
  }
  return names;
}

inline std::string join( std::vector<std::string> const& parts, std::string_view sep )
{
  std::string out;
  for ( std::size_t i = 0; i < parts.size(); ++i )
  {
    if ( i )
      out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string glue( std::vector<std::string> const& words, std::size_t from )
{
  std::string out;
  for ( auto i = from; i < words.size(); ++i )
    out += words[i];
  return out;
}

template<typename Map>
auto const& lookup( Map const& map, std::string const& name, std::string const& kind, std::size_t line )
{
  auto it = map.find( name );
  if ( it == map.end() )
    throw ParseError( line, "unknown " + kind + " '" + name + "'" );
  return it->second;
}

template<typename Map, typename Value>
void declare( Map& map, std::string const& name, Value&& value, std::string const& kind, std::size_t line )
{
  if ( !map.emplace( name, std::forward<Value>( value ) ).second )
    throw ParseError( line, "duplicate " + kind + " '" + name + "'" );
}

inline void expect_words( RawLine const& l, std::size_t at_least, std::string const& usage )
{
  if ( l.words.size() < at_least )
    throw ParseError( l.line, "expected: " + usage );
}

inline Scheme parse_scheme( RawLine const& l )
{
  expect_words( l, 5, "scheme <name> target=<m> vars=<k> maps=[...]" );
  auto const target = parse_count( keyed( l.words[2], "target", l.line ), l.line, "target" );
  auto const vars = parse_count( keyed( l.words[3], "vars", l.line ), l.line, "vars" );
  auto const maps_text = keyed( glue( l.words, 4 ), "maps", l.line );
  if ( maps_text.size() < 2 || maps_text.front() != '[' || maps_text.back() != ']' )
    throw ParseError( l.line, "scheme maps must be enclosed in [ ]" );

  std::vector<SchemeMap> maps;
  for ( auto const& h_text : split( std::string_view( maps_text ).substr( 1, maps_text.size() - 2 ), ';' ) )
  {
    SchemeMap h;
    for ( auto const& slot : split( h_text, ',' ) )
    {
      if ( slot.size() < 2 || ( slot[0] != 't' && slot[0] != 'v' ) )
        throw ParseError( l.line, "scheme slot must be t<i> or v<i>, got '" + slot + "'" );
      auto const index = parse_count( slot.substr( 1 ), l.line, "scheme index" );
      h.push_back( slot[0] == 't' ? SchemeSlot::target( index ) : SchemeSlot::var( index ) );
    }
    maps.push_back( std::move( h ) );
  }
  try
  {
    return Scheme( target, vars, std::move( maps ) );
  }
  catch ( Error const& e )
  {
    throw ParseError( l.line, "scheme " + l.words[1] + ": " + e.what() );
  }
}

} // namespace detail

inline Workspace parse_workspace( std::string const& text )
{
  using namespace detail;

  std::vector<RawLine> lines;
  {
    std::istringstream in( text );
    std::string raw;
    std::size_t number = 0;
    while ( std::getline( in, raw ) )
    {
      ++number;
      if ( auto hash = raw.find( '#' ); hash != std::string::npos )
        raw.erase( hash );
      std::istringstream words_in( raw );
      RawLine l{ number, {} };
      for ( std::string w; words_in >> w; )
        l.words.push_back( w );
      if ( l.words.empty() )
        continue;
      static const std::vector<std::string> kinds{ "domain", "function", "relation", "clone", "class", "constraint", "scheme" };
      if ( std::find( kinds.begin(), kinds.end(), l.words[0] ) == kinds.end() )
        throw ParseError( number, "unknown declaration '" + l.words[0] + "'" );
      if ( l.words.size() < 2 || !valid_name( l.words[1] ) )
        throw ParseError( number, "declaration needs a valid name" );
      lines.push_back( std::move( l ) );
    }
  }

  Workspace ws;
  auto const each = [&]( std::string const& kind, auto&& handle ) {
    for ( auto const& l : lines )
      if ( l.words[0] == kind )
        handle( l );
  };
  auto const domain_of = [&]( std::string const& name, std::size_t line ) { return lookup( ws.domains, name, "domain", line ); };

  each( "domain", [&]( RawLine const& l ) {
    if ( l.words.size() != 3 )
      throw ParseError( l.line, "expected: domain <name> <size>" );
    auto const size = parse_count( l.words[2], l.line, "domain size" );
    if ( size == 0 || size > max_workspace_domain )
      throw ParseError( l.line, "domain " + l.words[1] + ": size must lie in 1..10" );
    declare( ws.domains, l.words[1], DomainSize( size ), "domain", l.line );
  } );

  each( "function", [&]( RawLine const& l ) {
    if ( l.words.size() != 6 )
      throw ParseError( l.line, "expected: function <name> <domA> <domB> <arity> <table>" );
    auto const a = domain_of( l.words[2], l.line );
    auto const b = domain_of( l.words[3], l.line );
    auto const arity = parse_count( l.words[4], l.line, "arity" );
    try
    {
      FiniteFunction f( arity, a, b, parse_digits( l.words[5], l.line ) );
      declare( ws.functions, l.words[1], FunctionDecl{ l.words[2], l.words[3], std::move( f ) }, "function", l.line );
    }
    catch ( ShapeError const& e )
    {
      throw ParseError( l.line, "function " + l.words[1] + ": " + e.what() );
    }
  } );

  each( "relation", [&]( RawLine const& l ) {
    expect_words( l, 5, "relation <name> <dom> <arity> {t1,t2,...}" );
    auto const dom = domain_of( l.words[2], l.line );
    auto const arity = parse_count( l.words[3], l.line, "arity" );
    auto const body = glue( l.words, 4 );
    if ( body.size() < 2 || body.front() != '{' || body.back() != '}' )
      throw ParseError( l.line, "relation tuples must be enclosed in { }" );
    std::vector<Tuple> rows;
    auto const inner = std::string_view( body ).substr( 1, body.size() - 2 );
    if ( !inner.empty() )
      for ( auto const& t : split( inner, ',' ) )
        rows.push_back( parse_digits( t, l.line ) );
    try
    {
      declare( ws.relations, l.words[1], RelationDecl{ l.words[2], Relation( arity, dom, std::move( rows ) ) }, "relation", l.line );
    }
    catch ( ShapeError const& e )
    {
      throw ParseError( l.line, "relation " + l.words[1] + ": " + e.what() );
    }
  } );

  each( "clone", [&]( RawLine const& l ) {
    if ( l.words.size() != 4 )
      throw ParseError( l.line, "expected: clone <name> <dom> generators=<f1,...>" );
    auto const dom = domain_of( l.words[2], l.line );
    auto const names = name_list( keyed( l.words[3], "generators", l.line ), l.line );
    std::vector<FiniteFunction> gens;
    for ( auto const& n : names )
    {
      auto const& decl = lookup( ws.functions, n, "function", l.line );
      if ( decl.dom != l.words[2] || decl.cod != l.words[2] )
        throw ParseError( l.line, "clone " + l.words[1] + ": generator '" + n + "' is not an endofunction on " + l.words[2] );
      gens.push_back( decl.function );
    }
    declare( ws.clones, l.words[1], CloneDecl{ l.words[2], names, CloneSpec( dom, FunctionClass( dom, dom, std::move( gens ) ) ) }, "clone", l.line );
  } );

  each( "class", [&]( RawLine const& l ) {
    if ( l.words.size() != 5 )
      throw ParseError( l.line, "expected: class <name> <domA> <domB> members=<f1,...>" );
    auto const a = domain_of( l.words[2], l.line );
    auto const b = domain_of( l.words[3], l.line );
    auto const names = name_list( keyed( l.words[4], "members", l.line ), l.line );
    std::vector<FiniteFunction> members;
    for ( auto const& n : names )
    {
      auto const& decl = lookup( ws.functions, n, "function", l.line );
      if ( decl.dom != l.words[2] || decl.cod != l.words[3] )
        throw ParseError( l.line, "class " + l.words[1] + ": member '" + n + "' is not a function from " + l.words[2] + " to " + l.words[3] );
      members.push_back( decl.function );
    }
    declare( ws.classes, l.words[1], ClassDecl{ l.words[2], l.words[3], names, FunctionClass( a, b, std::move( members ) ) }, "class", l.line );
  } );

  each( "constraint", [&]( RawLine const& l ) {
    if ( l.words.size() != 4 )
      throw ParseError( l.line, "expected: constraint <name> <antecedent> <consequent>" );
    auto const& r = lookup( ws.relations, l.words[2], "relation", l.line );
    auto const& s = lookup( ws.relations, l.words[3], "relation", l.line );
    try
    {
      declare( ws.constraints, l.words[1], ConstraintDecl{ l.words[2], l.words[3], Constraint( r.relation, s.relation ) }, "constraint", l.line );
    }
    catch ( ShapeError const& e )
    {
      throw ParseError( l.line, "constraint " + l.words[1] + ": " + e.what() );
    }
  } );

  each( "scheme", [&]( RawLine const& l ) { declare( ws.schemes, l.words[1], parse_scheme( l ), "scheme", l.line ); } );

  return ws;
}

/// Canonical text of a workspace; parse_workspace reads it back unchanged.
inline std::string format_workspace( Workspace const& ws )
{
  std::ostringstream out;
  for ( auto const& [name, size] : ws.domains )
    out << "domain " << name << " " << size.value() << "\n";
  for ( auto const& [name, d] : ws.functions )
    out << "function " << name << " " << d.dom << " " << d.cod << " " << d.function.arity() << " "
        << to_string( std::span<Element const>( d.function.table() ) ) << "\n";
  for ( auto const& [name, d] : ws.relations )
    out << "relation " << name << " " << d.dom << " " << d.relation.arity() << " " << to_string( d.relation ) << "\n";
  for ( auto const& [name, d] : ws.clones )
    out << "clone " << name << " " << d.dom << " generators=" << detail::join( d.generators, "," ) << "\n";
  for ( auto const& [name, d] : ws.classes )
    out << "class " << name << " " << d.dom << " " << d.cod << " members=" << detail::join( d.members, "," ) << "\n";
  for ( auto const& [name, d] : ws.constraints )
    out << "constraint " << name << " " << d.antecedent << " " << d.consequent << "\n";
  for ( auto const& [name, s] : ws.schemes )
    out << "scheme " << name << " " << to_string( s ) << "\n";
  return out.str();
}

} // namespace clonecraft
