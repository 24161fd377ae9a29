#pragma once

// popen/fork helpers for driving the CLI binary from tests.

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sicgram::testing {

struct RunResult {
  int exit_code;
  std::string out;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q.push_back(c);
  }
  q += "'";
  return q;
}

inline RunResult run_cli(const std::string& bin, const std::vector<std::string>& args,
                         bool merge_stderr = false, const std::string& env = "") {
  std::string cmd = env.empty() ? shell_quote(bin) : "env " + env + " " + shell_quote(bin);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  if (!WIFEXITED(status)) throw std::runtime_error("child did not exit normally");
  return {WEXITSTATUS(status), out};
}

// Launches the CLI, waits until the checkpoint directory is nonempty, sends
// SIGINT, and returns the child's exit code. Child stderr goes to /dev/null.
inline int run_until_checkpoint_then_sigint(const std::string& bin,
                                            std::vector<std::string> args,
                                            const std::filesystem::path& ckpt_dir) {
  args.insert(args.begin(), bin);
  const pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    std::vector<char*> argv;
    for (auto& s : args) argv.push_back(s.data());
    argv.push_back(nullptr);
    FILE* sink = std::freopen("/dev/null", "w", stderr);
    (void)sink;
    execv(bin.c_str(), argv.data());
    _exit(127);
  }
  bool seen = false;
  for (int i = 0; i < 1500; ++i) {
    if (std::filesystem::exists(ckpt_dir) && !std::filesystem::is_empty(ckpt_dir)) {
      seen = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (!seen) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    throw std::runtime_error("no checkpoint appeared within the wait budget");
  }
  kill(pid, SIGINT);
  int status = 0;
  if (waitpid(pid, &status, 0) != pid) throw std::runtime_error("waitpid failed");
  if (!WIFEXITED(status)) throw std::runtime_error("child did not exit normally");
  return WEXITSTATUS(status);
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in.is_open()) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sicgram::testing
