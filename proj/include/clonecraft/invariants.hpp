#pragma once

#include <string>
#include <vector>

#include "classes.hpp"
#include "core.hpp"
#include "detail/parallel.hpp"
#include "detail/pointwise.hpp"

namespace clonecraft
{

/// FR: every f(r_1..r_n) with f in F and rows of R. The result lives on F's codomain.
inline Relation image( FunctionClass const& f, Relation const& r )
{
  if ( f.dom() != r.dom() )
    throw DomainMismatch( "relation domain differs from the class domain" );

  detail::TupleSet out;
  for ( auto const& member : f.members() )
    for ( auto& row : detail::image_rows( member, r.rows() ) )
      out.insert( std::move( row ) );
  return Relation( r.arity(), f.cod(), detail::sorted( out ) );
}

/// fR ⊆ R.
inline bool preserves( FiniteFunction const& f, Relation const& r )
{
  if ( f.dom() != r.dom() || f.cod() != r.dom() )
    throw DomainMismatch( "preservation needs an endofunction on the relation domain" );
  for ( auto const& row : detail::image_rows( f, r.rows() ) )
    if ( !r.contains( row ) )
      return false;
  return true;
}

/// Whether every member of the clone preserves R.  Checking the generators
/// suffices: preservation passes from operations to their compositions.
inline bool is_invariant( CloneSpec const& spec, Relation const& r )
{
  if ( r.dom() != spec.dom() )
    throw DomainMismatch( "relation domain differs from the clone domain" );
  for ( auto const& g : spec.generators().members() )
    if ( !preserves( g, r ) )
      return false;
  return true;
}

/// CR, the least invariant of the clone containing R.
inline Relation generate_invariant( CloneSpec const& spec, Relation const& r )
{
  if ( r.dom() != spec.dom() )
    throw DomainMismatch( "relation domain differs from the clone domain" );
  return Relation( r.arity(), r.dom(), detail::close_rows( spec.generators().members(), r.rows() ) );
}

/// All m-ary invariants of the clone, by filtering every subset of A^m.
inline std::vector<Relation> enumerate_invariants( CloneSpec const& spec, std::size_t m, Budgets const& budgets = {} )
{
  if ( m == 0 )
    throw ShapeError( "arity must be positive" );
  auto const points = checked_power( spec.dom().value(), m );
  if ( !points || *points >= 64 || ( std::uint64_t{ 1 } << *points ) > budgets.max_subsets )
  {
    throw BudgetExceeded( "max-subsets", "2^" + ( points ? std::to_string( *points ) : std::string( "(overflow)" ) ) + " subsets of " +
                                             std::to_string( spec.dom().value() ) + "^" + std::to_string( m ),
                          std::to_string( budgets.max_subsets ) );
  }
  auto const full = Relation::full( m, spec.dom() );
  auto const n_points = static_cast<std::size_t>( *points );

  // For each generator, the point produced from every argument choice.
  struct Table
  {
    std::size_t arity;
    std::vector<std::uint32_t> result;
  };
  std::vector<Table> tables;
  for ( auto const& g : spec.generators().members() )
  {
    Table t{ g.arity(), {} };
    auto const choices = table_size( DomainSize( n_points ), g.arity() );
    t.result.resize( choices );
    Tuple pick( g.arity() );
    std::vector<Point> rows;
    for ( std::size_t c = 0; c < choices; ++c )
    {
      detail::decode_into( c, n_points, pick );
      rows.clear();
      for ( auto p : pick )
        rows.emplace_back( full.rows()[p], spec.dom() );
      t.result[c] = static_cast<std::uint32_t>( detail::encode( apply_componentwise( g, rows ).entries(), spec.dom().value() ) );
    }
    tables.push_back( std::move( t ) );
  }

  auto const closed = [&]( std::uint64_t mask ) {
    std::vector<std::uint32_t> members;
    for ( std::size_t p = 0; p < n_points; ++p )
      if ( mask >> p & 1 )
        members.push_back( static_cast<std::uint32_t>( p ) );
    if ( members.empty() )
      return true;
    for ( auto const& t : tables )
    {
      std::vector<std::size_t> digit( t.arity, 0 );
      while ( true )
      {
        std::size_t choice = 0;
        for ( auto d : digit )
          choice = choice * n_points + members[d];
        if ( !( mask >> t.result[choice] & 1 ) )
          return false;
        std::size_t pos = t.arity;
        while ( pos > 0 && ++digit[pos - 1] == members.size() )
          digit[--pos] = 0;
        if ( pos == 0 )
          break;
      }
    }
    return true;
  };

  auto const masks = detail::parallel_filter( std::uint64_t{ 1 } << n_points, budgets.threads, closed );

  std::vector<Relation> result;
  result.reserve( masks.size() );
  for ( auto mask : masks )
  {
    std::vector<Tuple> rows;
    for ( std::size_t p = 0; p < n_points; ++p )
      if ( mask >> p & 1 )
        rows.push_back( full.rows()[p] );
    result.emplace_back( m, spec.dom(), std::move( rows ) );
  }
  std::sort( result.begin(), result.end() );
  return result;
}

} // namespace clonecraft
