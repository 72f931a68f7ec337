#include "bsar/cli.hpp"

int main(int argc, char** argv) { return bsar::run(argc, argv); }
