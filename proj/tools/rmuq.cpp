// rmuq command-line entry point (subcommands filled in as modules land).
#include <cstdio>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::printf("rmuq: placeholder\n");
  return 0;
}
