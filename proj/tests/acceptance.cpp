#include <iostream>

#include "degenfront/checks.hpp"

int main() {
  degenfront::AcceptanceSuite suite(degenfront::CheckContext{});
  bool ok = true;
  suite.run_all([&](const degenfront::CheckResult& r) {
    std::cout << degenfront::format_check_line(r) << std::endl;
    ok = ok && r.status != degenfront::CheckStatus::fail;
  });
  return ok ? 0 : 1;
}
