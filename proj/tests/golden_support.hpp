#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// Golden CLI corpus: `cases.txt` holds `<name> <exit-code> <args...>` per
// line; `<name>.out` holds the expected standard output byte for byte.

namespace golden
{

struct Case
{
  std::string name;
  int exit_code = 0;
  std::string args;
};

struct Outcome
{
  int exit_code = -1;
  std::string out;
};

inline std::vector<Case> load_cases( std::string const& dir )
{
  std::ifstream in( dir + "/cases.txt" );
  std::vector<Case> cases;
  for ( std::string line; std::getline( in, line ); )
  {
    if ( line.empty() || line[0] == '#' )
      continue;
    std::istringstream words( line );
    Case c;
    words >> c.name >> c.exit_code;
    std::getline( words, c.args );
    cases.push_back( c );
  }
  return cases;
}

inline Outcome run( std::string const& binary, std::string const& args, int threads )
{
  auto const command = "CLONECRAFT_THREADS=" + std::to_string( threads ) + " '" + binary + "'" + args + " 2>/dev/null";
  Outcome outcome;
  FILE* pipe = popen( command.c_str(), "r" );
  if ( !pipe )
    return outcome;
  char buffer[4096];
  for ( std::size_t n; ( n = std::fread( buffer, 1, sizeof buffer, pipe ) ) > 0; )
    outcome.out.append( buffer, n );
  int const status = pclose( pipe );
  outcome.exit_code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
  return outcome;
}

inline std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

/// Problems found for one case; empty when it reproduces its golden output
/// across two runs and across one and four threads.
inline std::vector<std::string> check_case( std::string const& binary, std::string const& dir, Case const& c )
{
  std::vector<std::string> problems;
  auto const expected = read_file( dir + "/" + c.name + ".out" );
  auto const first = run( binary, c.args, 1 );
  auto const second = run( binary, c.args, 1 );
  auto const threaded = run( binary, c.args, 4 );
  if ( first.exit_code != c.exit_code )
    problems.push_back( c.name + ": exit " + std::to_string( first.exit_code ) + ", expected " + std::to_string( c.exit_code ) );
  if ( first.out != expected )
    problems.push_back( c.name + ": output differs from " + c.name + ".out" );
  if ( second.out != first.out || second.exit_code != first.exit_code )
    problems.push_back( c.name + ": second run differs" );
  if ( threaded.out != first.out || threaded.exit_code != first.exit_code )
    problems.push_back( c.name + ": four-thread run differs" );
  return problems;
}

} // namespace golden
