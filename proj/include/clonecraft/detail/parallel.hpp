#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace clonecraft::detail
{

/// Evaluates `body(i)` for every i in [0, count) on up to `threads` workers and
/// returns the indices for which it was true, in increasing order.
template<typename Body>
std::vector<std::uint64_t> parallel_filter( std::uint64_t count, unsigned threads, Body const& body )
{
  threads = std::max( 1u, threads );
  if ( threads == 1 || count < 2 * threads )
  {
    std::vector<std::uint64_t> hits;
    for ( std::uint64_t i = 0; i < count; ++i )
      if ( body( i ) )
        hits.push_back( i );
    return hits;
  }

  std::vector<std::vector<std::uint64_t>> partial( threads );
  std::vector<std::exception_ptr> errors( threads );
  std::vector<std::thread> workers;
  auto const chunk = ( count + threads - 1 ) / threads;
  for ( unsigned t = 0; t < threads; ++t )
  {
    workers.emplace_back( [&, t] {
      try
      {
        auto const begin = t * chunk;
        auto const end = std::min( count, begin + chunk );
        for ( auto i = begin; i < end; ++i )
          if ( body( i ) )
            partial[t].push_back( i );
      }
      catch ( ... )
      {
        errors[t] = std::current_exception();
      }
    } );
  }
  for ( auto& w : workers )
    w.join();
  for ( auto const& e : errors )
    if ( e )
      std::rethrow_exception( e );

  std::vector<std::uint64_t> hits;
  for ( auto const& p : partial )
    hits.insert( hits.end(), p.begin(), p.end() );
  return hits;
}

} // namespace clonecraft::detail
