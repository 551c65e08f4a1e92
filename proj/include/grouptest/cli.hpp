#ifndef GROUPTEST_CLI_HPP
#define GROUPTEST_CLI_HPP

namespace grouptest {

// Exit codes: 0 = accept / success, 1 = reject, 2 = usage or input error.
int cli_main(int argc, char** argv);

}  // namespace grouptest

#endif
