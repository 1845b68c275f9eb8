#pragma once

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "classes.hpp"
#include "constraints.hpp"
#include "core.hpp"
#include "galois.hpp"
#include "invariants.hpp"
#include "minors.hpp"
#include "verify.hpp"
#include "workspace.hpp"

/*!
  \file cli.hpp
  \brief The `clonecraft` command line.

  Exit codes: 0 success, 1 negative verdict, 2 usage, parse, shape or domain
  error, 3 budget exceeded.  Reports go to `out`, diagnostics to `err`.
  Clone arguments name a workspace clone, the projection clone `P` (domain
  taken from the other arguments) or `P:<domain>`.
*/

namespace clonecraft::cli
{

enum ExitCode : int
{
  ok = 0,
  negative = 1,
  usage = 2,
  budget = 3
};

namespace detail
{

struct Options
{
  std::string workspace;
  std::size_t fn_cap = ArityCaps{}.fn_arity_cap;
  std::size_t rel_cap = ArityCaps{}.rel_arity_cap;
  std::size_t max_subsets = Budgets{}.max_subsets;
  std::size_t max_skolem = Budgets{}.max_skolem;
  std::size_t max_pairs = Budgets{}.max_pairs;

  std::string clone, relation, function, cls, constraint, scheme, c1 = "P", c2 = "P", suite;
  std::vector<std::string> relations, constraints;
  std::size_t arity = 1;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cases;

  ArityCaps caps() const { return { fn_cap, rel_cap }; }
  Budgets budgets( std::size_t threads ) const { return { max_subsets, max_skolem, max_pairs, static_cast<unsigned>( threads ) }; }
};

inline std::size_t threads_from_environment()
{
  char const* raw = std::getenv( "CLONECRAFT_THREADS" );
  if ( !raw || !*raw )
    return 1;
  std::string_view text( raw );
  std::size_t value = 0;
  auto const [end, ec] = std::from_chars( text.data(), text.data() + text.size(), value );
  if ( ec != std::errc() || end != text.data() + text.size() || value == 0 )
    throw UsageError( "CLONECRAFT_THREADS must be a positive integer, got '" + std::string( text ) + "'" );
  return value;
}

inline Workspace load_workspace( std::string const& path )
{
  if ( path.empty() )
    throw UsageError( "this command needs a workspace (-w FILE)" );
  std::ifstream in( path );
  if ( !in )
    throw UsageError( "cannot read workspace '" + path + "'" );
  std::ostringstream text;
  text << in.rdbuf();
  return parse_workspace( text.str() );
}

template<typename Map>
auto const& find( Map const& map, std::string const& name, std::string const& kind )
{
  auto it = map.find( name );
  if ( it == map.end() )
    throw UsageError( "unknown " + kind + " '" + name + "'" );
  return it->second;
}

/// Resolves a clone argument; `context` supplies the domain of a bare `P`.
inline CloneSpec resolve_clone( Workspace const& ws, std::string const& name, std::optional<DomainSize> context )
{
  if ( name == "P" )
  {
    if ( context )
      return CloneSpec( *context );
    if ( ws.domains.size() == 1 )
      return CloneSpec( ws.domains.begin()->second );
    throw UsageError( "cannot infer the domain of P; write P:<domain>" );
  }
  if ( name.starts_with( "P:" ) )
    return CloneSpec( find( ws.domains, name.substr( 2 ), "domain" ) );
  auto const& spec = find( ws.clones, name, "clone" ).spec;
  if ( context && spec.dom() != *context )
    throw DomainMismatch( "clone " + name + " lives on a domain of size " + std::to_string( spec.dom().value() ) + ", expected " +
                          std::to_string( context->value() ) );
  return spec;
}

inline void header( std::ostream& out, std::string const& command, Options const& o )
{
  out << "# clonecraft " << command << " fn-cap=" << o.fn_cap << " rel-cap=" << o.rel_cap << " max-subsets=" << o.max_subsets
      << " max-skolem=" << o.max_skolem << " max-pairs=" << o.max_pairs << "\n";
}

inline void print_class( std::ostream& out, FunctionClass const& k )
{
  out << "members " << k.size() << "\n";
  for ( auto const& f : k.members() )
    out << to_string( f ) << "\n";
}

inline int clonegen( Options const& o, std::ostream& out )
{
  auto const ws = load_workspace( o.workspace );
  auto const spec = resolve_clone( ws, o.clone, std::nullopt );
  auto const level = generate_clone_level( spec, o.arity );
  header( out, "clonegen", o );
  out << "level " << o.arity << "\n";
  print_class( out, level );
  return ok;
}

inline int invgen( Options const& o, std::ostream& out )
{
  auto const ws = load_workspace( o.workspace );
  auto const& r = find( ws.relations, o.relation, "relation" ).relation;
  auto const spec = resolve_clone( ws, o.clone, r.dom() );
  auto const generated = generate_invariant( spec, r );
  header( out, "invgen", o );
  out << to_string( generated ) << "\n";
  return ok;
}

inline int satisfies_command( Options const& o, std::ostream& out )
{
  auto const ws = load_workspace( o.workspace );
  if ( o.function.empty() == o.cls.empty() )
    throw UsageError( "give exactly one of --function and --class" );
  auto const& c = find( ws.constraints, o.constraint, "constraint" ).constraint;
  auto const k = o.function.empty() ? find( ws.classes, o.cls, "class" ).cls
                                    : FunctionClass( find( ws.functions, o.function, "function" ).function.dom(),
                                                     find( ws.functions, o.function, "function" ).function.cod(),
                                                     { find( ws.functions, o.function, "function" ).function } );
  auto const violator = std::find_if( k.members().begin(), k.members().end(), [&]( auto const& f ) { return !satisfies( f, c ); } );
  header( out, "satisfies", o );
  if ( violator != k.members().end() )
  {
    out << "does not satisfy\n";
    out << "violator " << to_string( *violator ) << "\n";
    return negative;
  }
  out << "satisfies\n";
  return ok;
}

inline int minor( Options const& o, std::ostream& out, Budgets const& budgets )
{
  auto const ws = load_workspace( o.workspace );
  auto const& scheme = find( ws.schemes, o.scheme, "scheme" );
  if ( o.relations.empty() == o.constraints.empty() )
    throw UsageError( "give exactly one of --relations and --constraints" );
  if ( !o.relations.empty() )
  {
    std::vector<Relation> family;
    for ( auto const& name : o.relations )
      family.push_back( find( ws.relations, name, "relation" ).relation );
    auto const r = tight_minor( family, scheme, budgets );
    header( out, "minor", o );
    out << to_string( r ) << "\n";
    return ok;
  }
  std::vector<Constraint> family;
  for ( auto const& name : o.constraints )
    family.push_back( find( ws.constraints, name, "constraint" ).constraint );
  auto const c = tight_minor_constraint( family, scheme, budgets );
  header( out, "minor", o );
  out << "antecedent " << to_string( c.antecedent() ) << "\n";
  out << "consequent " << to_string( c.consequent() ) << "\n";
  return ok;
}

inline int closure_class( Options const& o, std::ostream& out, Budgets const& budgets )
{
  auto const ws = load_workspace( o.workspace );
  auto const& k = find( ws.classes, o.cls, "class" ).cls;
  auto const c1 = resolve_clone( ws, o.c1, k.dom() );
  auto const c2 = resolve_clone( ws, o.c2, k.cod() );
  auto const report = closure_of_class( k, c1, c2, o.caps(), budgets );
  header( out, "closure-class", o );
  out << "exact " << ( report.exact_within_caps ? "yes" : "no" ) << "\n";
  print_class( out, report.closed );
  return ok;
}

inline int closure_constraints( Options const& o, std::ostream& out, Budgets const& budgets )
{
  auto const ws = load_workspace( o.workspace );
  if ( o.constraints.empty() )
    throw UsageError( "--constraints needs at least one constraint" );
  std::vector<Constraint> members;
  for ( auto const& name : o.constraints )
    members.push_back( find( ws.constraints, name, "constraint" ).constraint );
  ConstraintSet t0( members.front().a_size(), members.front().b_size(), members );
  auto const c1 = resolve_clone( ws, o.c1, t0.a_size() );
  auto const c2 = resolve_clone( ws, o.c2, t0.b_size() );
  auto const report = closure_of_constraints( t0, c1, c2, o.caps(), budgets );
  header( out, "closure-constraints", o );
  out << "exact " << ( report.exact_within_caps ? "yes" : "no" ) << "\n";
  out << "members " << report.closed.size() << "\n";
  for ( auto const& c : report.closed.members() )
    out << "arity " << c.arity() << " " << to_string( c ) << "\n";
  return ok;
}

inline int separate( Options const& o, std::ostream& out )
{
  auto const ws = load_workspace( o.workspace );
  auto const& k = find( ws.classes, o.cls, "class" ).cls;
  auto const& g = find( ws.functions, o.function, "function" ).function;
  auto const c1 = resolve_clone( ws, o.c1, k.dom() );
  auto const c2 = resolve_clone( ws, o.c2, k.cod() );
  auto const result = separating_constraint( k, g, c1, c2, o.caps() );
  header( out, "separate", o );
  if ( result.stabilized )
    out << "stability closure " << to_string( result.closed_class ) << "\n";
  if ( !result.separator )
  {
    out << "no separator: " << to_string( g ) << " belongs to the closed class\n";
    return negative;
  }
  out << "antecedent " << to_string( result.separator->antecedent() ) << "\n";
  out << "consequent " << to_string( result.separator->consequent() ) << "\n";
  return ok;
}

inline int verify_command( Options const& o, std::ostream& out, std::ostream& err, Budgets const& budgets )
{
  VerifyOptions options;
  options.budgets = budgets;
  options.cases = o.cases;
  if ( o.fn_cap != ArityCaps{}.fn_arity_cap || o.rel_cap != ArityCaps{}.rel_arity_cap )
    options.caps = o.caps();
  auto const result = verify( o.suite, o.seed, options );
  header( out, "verify", o );
  out << format_suite_result( result );
  err << "suite " << result.name << " wall time " << result.wall_seconds << " s\n";
  return result.passed() ? ok : negative;
}

} // namespace detail

/// Runs one command line (without the program name).
inline int run( std::vector<std::string> args, std::ostream& out, std::ostream& err )
{
  detail::Options o;
  CLI::App app( "Finite clones, invariants, constraints and their Galois closures", "clonecraft" );
  app.require_subcommand( 1 );

  auto const common = [&]( CLI::App* sub, bool needs_workspace ) {
    auto* w = sub->add_option( "-w,--workspace", o.workspace, "Workspace file" );
    if ( needs_workspace )
      w->required();
    sub->add_option( "--fn-cap", o.fn_cap, "Largest function arity enumerated" )->check( CLI::PositiveNumber );
    sub->add_option( "--rel-cap", o.rel_cap, "Largest relation arity enumerated" )->check( CLI::PositiveNumber );
    sub->add_option( "--max-subsets", o.max_subsets, "Budget for enumerated subsets and candidate functions" )->check( CLI::PositiveNumber );
    sub->add_option( "--max-skolem", o.max_skolem, "Budget for Skolem maps per scheme" )->check( CLI::PositiveNumber );
    sub->add_option( "--max-pairs", o.max_pairs, "Budget for candidate constraint pairs" )->check( CLI::PositiveNumber );
  };

  auto* clonegen = app.add_subcommand( "clonegen", "List one arity level of a clone" );
  common( clonegen, true );
  clonegen->add_option( "--clone", o.clone, "Clone name" )->required();
  clonegen->add_option( "--arity", o.arity, "Arity of the level" )->required()->check( CLI::PositiveNumber );

  auto* invgen = app.add_subcommand( "invgen", "Generate the invariant of a clone containing a relation" );
  common( invgen, true );
  invgen->add_option( "--clone", o.clone, "Clone name" )->required();
  invgen->add_option( "--relation", o.relation, "Relation name" )->required();

  auto* sat = app.add_subcommand( "satisfies", "Check a function or class against a constraint" );
  common( sat, true );
  sat->add_option( "--function", o.function, "Function name" );
  sat->add_option( "--class", o.cls, "Class name" );
  sat->add_option( "--constraint", o.constraint, "Constraint name" )->required();

  auto* minor = app.add_subcommand( "minor", "Tight conjunctive minor of a family via a scheme" );
  common( minor, true );
  minor->add_option( "--scheme", o.scheme, "Scheme name" )->required();
  minor->add_option( "--relations", o.relations, "Relation family" )->delimiter( ',' );
  minor->add_option( "--constraints", o.constraints, "Constraint family" )->delimiter( ',' );

  auto* cc = app.add_subcommand( "closure-class", "Galois closure of a function class" );
  common( cc, true );
  cc->add_option( "--class", o.cls, "Class name" )->required();
  cc->add_option( "--c1", o.c1, "Clone acting on the right" );
  cc->add_option( "--c2", o.c2, "Clone acting on the left" );

  auto* ck = app.add_subcommand( "closure-constraints", "Galois closure of a set of constraints" );
  common( ck, true );
  ck->add_option( "--constraints", o.constraints, "Constraint names" )->required()->delimiter( ',' );
  ck->add_option( "--c1", o.c1, "Antecedent clone" );
  ck->add_option( "--c2", o.c2, "Consequent clone" );

  auto* sep = app.add_subcommand( "separate", "Separating constraint for a function outside a class" );
  common( sep, true );
  sep->add_option( "--class", o.cls, "Class name" )->required();
  sep->add_option( "--function", o.function, "Function name" )->required();
  sep->add_option( "--c1", o.c1, "Antecedent clone" );
  sep->add_option( "--c2", o.c2, "Consequent clone" );

  auto* ver = app.add_subcommand( "verify", "Run a named property suite" );
  common( ver, false );
  ver->add_option( "--suite", o.suite, "Suite name" )->required();
  ver->add_option( "--seed", o.seed, "Random seed" );
  ver->add_option( "--cases", o.cases, "Override the number of cases" )->check( CLI::PositiveNumber );

  try
  {
    std::reverse( args.begin(), args.end() );
    app.parse( args );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e, out, err );
  }
  catch ( CLI::CallForAllHelp const& e )
  {
    return app.exit( e, out, err );
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e, out, err );
    return usage;
  }

  try
  {
    auto const budgets = o.budgets( detail::threads_from_environment() );
    if ( clonegen->parsed() )
      return detail::clonegen( o, out );
    if ( invgen->parsed() )
      return detail::invgen( o, out );
    if ( sat->parsed() )
      return detail::satisfies_command( o, out );
    if ( minor->parsed() )
      return detail::minor( o, out, budgets );
    if ( cc->parsed() )
      return detail::closure_class( o, out, budgets );
    if ( ck->parsed() )
      return detail::closure_constraints( o, out, budgets );
    if ( sep->parsed() )
      return detail::separate( o, out );
    return detail::verify_command( o, out, err, budgets );
  }
  catch ( BudgetExceeded const& e )
  {
    err << "clonecraft: budget exceeded: " << e.what() << "\n";
    return budget;
  }
  catch ( Error const& e )
  {
    err << "clonecraft: " << e.what() << "\n";
    return usage;
  }
}

} // namespace clonecraft::cli
