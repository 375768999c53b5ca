#include <cstdio>

int main() {
  std::puts("coxcell cli placeholder");
  return 0;
}
