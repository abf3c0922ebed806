#include "osfd/subprocess.hpp"

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "osfd/errors.hpp"
#include "osfd/io.hpp"

namespace osfd {

std::vector<double> parse_decimals(const std::string& line) {
  std::vector<double> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v))
      throw UsageError("not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

SubprocessEvaluator::SubprocessEvaluator(const std::string& command, std::size_t p,
                                         std::size_t q)
    : p_(p), q_(q) {
  std::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (pipe2(in_pipe, O_CLOEXEC) != 0) throw EvaluatorError("pipe: " + std::string(std::strerror(errno)));
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw EvaluatorError("pipe: " + std::string(std::strerror(errno)));
  }
  pid_ = fork();
  if (pid_ < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw EvaluatorError("fork: " + std::string(std::strerror(errno)));
  }
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = fdopen(in_pipe[1], "w");
  from_child_ = fdopen(out_pipe[0], "r");
  if (!to_child_ || !from_child_) throw EvaluatorError("fdopen failed");
}

SubprocessEvaluator::~SubprocessEvaluator() {
  if (to_child_) std::fclose(to_child_);
  if (from_child_) std::fclose(from_child_);
  if (pid_ > 0) {
    // Give the child a moment to exit on EOF, then stop it.
    int status = 0;
    for (int i = 0; i < 100; ++i) {
      if (waitpid(pid_, &status, WNOHANG) != 0) return;
      usleep(10000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, &status, 0);
  }
}

Point SubprocessEvaluator::operator()(std::span<const double> x) {
  if (x.size() != p_) throw EvaluatorError("evaluator: wrong input dimension");
  std::string line;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) line += ' ';
    line += format_double(x[j]);
  }
  line += '\n';
  if (std::fputs(line.c_str(), to_child_) < 0 || std::fflush(to_child_) != 0)
    throw EvaluatorError("evaluator: cannot write to child process");

  std::string reply;
  int c;
  while ((c = std::fgetc(from_child_)) != EOF && c != '\n') reply.push_back(static_cast<char>(c));
  if (c == EOF && reply.empty())
    throw EvaluatorError("evaluator: child process closed its output");

  std::vector<double> y;
  try {
    y = parse_decimals(reply);
  } catch (const UsageError& e) {
    throw EvaluatorError(std::string("evaluator: ") + e.what());
  }
  if (y.size() != q_)
    throw EvaluatorError("evaluator: expected " + std::to_string(q_) +
                         " values, got " + std::to_string(y.size()));
  for (double v : y)
    if (!std::isfinite(v)) throw EvaluatorError("evaluator: non-finite output");
  return y;
}

}  // namespace osfd
