#include <cstring>
#include <fstream>
#include <iostream>

#include "golden_support.hpp"

// Usage: golden_runner <clonecraft> <golden-dir> [--update]
int main( int argc, char** argv )
{
  if ( argc < 3 )
  {
    std::cerr << "usage: golden_runner <clonecraft> <golden-dir> [--update]\n";
    return 2;
  }
  std::string const binary = argv[1];
  std::string const dir = argv[2];
  bool const update = argc > 3 && std::strcmp( argv[3], "--update" ) == 0;

  auto const cases = golden::load_cases( dir );
  if ( cases.empty() )
  {
    std::cerr << "no cases in " << dir << "\n";
    return 1;
  }
  int failures = 0;
  for ( auto const& c : cases )
  {
    if ( update )
    {
      auto const outcome = golden::run( binary, c.args, 1 );
      std::ofstream( dir + "/" + c.name + ".out", std::ios::binary ) << outcome.out;
      std::cout << c.name << " exit " << outcome.exit_code << "\n";
      continue;
    }
    auto const problems = golden::check_case( binary, dir, c );
    for ( auto const& p : problems )
      std::cout << "FAIL " << p << "\n";
    failures += problems.empty() ? 0 : 1;
    if ( problems.empty() )
      std::cout << "ok   " << c.name << "\n";
  }
  std::cout << cases.size() << " cases, " << failures << " failing\n";
  return failures == 0 ? 0 : 1;
}
