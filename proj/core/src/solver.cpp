#include "yadf/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace yadf {

SolverConfig SolverConfig::default_config() {
  SolverConfig cfg;
  if (const char* env = std::getenv("YADF_SOLVER"); env && *env) {
    cfg.solver_path = env;
    return cfg;
  }
  // the bundled evaluator, installed next to the calling binary
  std::error_code ec;
  auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    auto sibling = self.parent_path() / "aspeval";
    if (std::filesystem::exists(sibling, ec)) {
      cfg.solver_path = sibling.string();
      return cfg;
    }
  }
  cfg.solver_path = "clingo";
  return cfg;
}

namespace {

struct ChildResult {
  int status = -1;
  bool timed_out = false;
  std::string out, err;
};

// One child: write `input` to stdin, collect stdout/stderr, wait (with an
// optional deadline, after which the child is killed).
ChildResult run_child(const std::vector<std::string>& argv, const std::string& input,
                      int time_limit_s) {
  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (pipe(in_pipe) || pipe(out_pipe) || pipe(err_pipe))
    throw std::runtime_error("solver: pipe failed");

  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("solver: fork failed");
  if (pid == 0) {
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    dup2(err_pipe[1], 2);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    std::fprintf(stderr, "exec %s: %s\n", args[0], std::strerror(errno));
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);

  ChildResult res;
  std::size_t written = 0;
  bool stdin_open = true;
  bool out_open = true, err_open = true;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(time_limit_s);

  signal(SIGPIPE, SIG_IGN);
  while (out_open || err_open || stdin_open) {
    struct pollfd fds[3];
    int n = 0;
    int in_idx = -1, out_idx = -1, err_idx = -1;
    if (stdin_open) {
      in_idx = n;
      fds[n++] = {in_pipe[1], POLLOUT, 0};
    }
    if (out_open) {
      out_idx = n;
      fds[n++] = {out_pipe[0], POLLIN, 0};
    }
    if (err_open) {
      err_idx = n;
      fds[n++] = {err_pipe[0], POLLIN, 0};
    }
    int timeout_ms = -1;
    if (time_limit_s > 0) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                      deadline - std::chrono::steady_clock::now())
                      .count();
      if (left <= 0) {
        kill(pid, SIGKILL);
        res.timed_out = true;
        break;
      }
      timeout_ms = static_cast<int>(left);
    }
    int rc = poll(fds, n, timeout_ms);
    if (rc < 0 && errno != EINTR) break;
    if (rc == 0) continue;  // deadline handled above

    char buf[65536];
    if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[in_idx].revents & (POLLERR | POLLHUP)) {
        close(in_pipe[1]);
        stdin_open = false;
      } else {
        ssize_t w = write(in_pipe[1], input.data() + written,
                          std::min<std::size_t>(input.size() - written, 65536));
        if (w > 0) written += static_cast<std::size_t>(w);
        if (w < 0 && errno != EAGAIN && errno != EINTR) {
          close(in_pipe[1]);
          stdin_open = false;
        }
        if (written >= input.size()) {
          close(in_pipe[1]);
          stdin_open = false;
        }
      }
    }
    if (out_idx >= 0 && (fds[out_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t r = read(out_pipe[0], buf, sizeof buf);
      if (r > 0)
        res.out.append(buf, static_cast<std::size_t>(r));
      else {
        close(out_pipe[0]);
        out_open = false;
      }
    }
    if (err_idx >= 0 && (fds[err_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t r = read(err_pipe[0], buf, sizeof buf);
      if (r > 0)
        res.err.append(buf, static_cast<std::size_t>(r));
      else {
        close(err_pipe[0]);
        err_open = false;
      }
    }
  }
  if (stdin_open) close(in_pipe[1]);
  if (out_open) close(out_pipe[0]);
  if (err_open) close(err_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  res.status = status;
  return res;
}

}  // namespace

RunResult run_solver_text(const std::string& program_text, const SolverConfig& cfg) {
  std::string input = program_text;
  if (cfg.preprocessor) {
    ChildResult pre = run_child({*cfg.preprocessor}, input, cfg.time_limit_s);
    if (pre.timed_out) return {SolverExit::Timeout, pre.out, pre.err};
    if (!WIFEXITED(pre.status) || WEXITSTATUS(pre.status) != 0)
      return {SolverExit::Error, pre.out, pre.err};
    input = pre.out;
  }
  ChildResult run =
      run_child({cfg.solver_path, std::to_string(cfg.answer_cap)}, input, cfg.time_limit_s);
  RunResult out;
  out.output = run.out;
  out.diagnostics = run.err;
  if (run.timed_out) {
    out.exit_class = SolverExit::Timeout;
    return out;
  }
  if (!WIFEXITED(run.status)) {
    out.exit_class = SolverExit::Error;
    return out;
  }
  switch (WEXITSTATUS(run.status)) {
    case 10:
    case 30: out.exit_class = SolverExit::Sat; break;
    case 20: out.exit_class = SolverExit::Unsat; break;
    default: out.exit_class = SolverExit::Error; break;
  }
  return out;
}

RunResult run_solver(const asp::Program& p, const SolverConfig& cfg) {
  return run_solver_text(asp::render(p), cfg);
}

namespace {

// asg(name,value) -> (statement, truth value); anything else: nullopt.
std::optional<std::pair<std::string, Tv>> parse_asg(const std::string& atom) {
  if (atom.rfind("asg(", 0) != 0 || atom.back() != ')') return std::nullopt;
  std::string inner = atom.substr(4, atom.size() - 5);
  auto comma = inner.rfind(',');
  if (comma == std::string::npos) return std::nullopt;
  std::string name = inner.substr(0, comma);
  std::string value = inner.substr(comma + 1);
  Tv tv;
  if (value == "1")
    tv = Tv::True;
  else if (value == "0")
    tv = Tv::False;
  else if (value == "u")
    tv = Tv::Undec;
  else
    return std::nullopt;
  return std::make_pair(name, tv);
}

}  // namespace

AnswerSetReport decode(const std::string& raw, const std::vector<std::string>& statements) {
  AnswerSetReport report;
  std::istringstream in(raw);
  std::string line;
  bool expect_atoms = false;
  while (std::getline(in, line)) {
    if (line.rfind("Answer:", 0) == 0) {
      expect_atoms = true;
      continue;
    }
    if (line.rfind("SATISFIABLE", 0) == 0) {
      report.satisfiable = true;
      report.exit_class = SolverExit::Sat;
      continue;
    }
    if (line.rfind("UNSATISFIABLE", 0) == 0) {
      report.satisfiable = false;
      report.exit_class = SolverExit::Unsat;
      continue;
    }
    if (!expect_atoms) continue;
    expect_atoms = false;

    std::vector<std::string> atoms;
    std::istringstream atoms_in(line);
    std::string atom;
    while (atoms_in >> atom) atoms.push_back(atom);

    Interpretation3 v(statements.size());
    std::vector<bool> assigned(statements.size(), false);
    for (const std::string& a : atoms) {
      auto parsed = parse_asg(a);
      if (!parsed) continue;
      std::size_t idx = statements.size();
      for (std::size_t i = 0; i < statements.size(); ++i)
        if (statements[i] == parsed->first) idx = i;
      if (idx == statements.size())
        throw std::runtime_error("decode: asg atom for unknown statement '" + parsed->first + "'");
      if (assigned[idx] && v[idx] != parsed->second)
        throw std::runtime_error("decode: conflicting asg atoms for '" + parsed->first + "'");
      assigned[idx] = true;
      v[idx] = parsed->second;
    }
    for (std::size_t i = 0; i < statements.size(); ++i)
      if (!assigned[i])
        throw std::runtime_error("decode: no asg atom for '" + statements[i] + "'");
    report.interpretations.push_back(std::move(v));
    report.raw_atom_sets.push_back(std::move(atoms));
  }
  if (report.interpretations.size() != report.raw_atom_sets.size())
    throw std::runtime_error("decode: malformed answer blocks");
  report.satisfiable = report.satisfiable || !report.interpretations.empty();
  return report;
}

bool decide(const asp::Program& program_with_query, QueryKind kind, const SolverConfig& cfg) {
  SolverConfig capped = cfg;
  capped.answer_cap = 1;
  RunResult r = run_solver(program_with_query, capped);
  if (r.exit_class == SolverExit::Error || r.exit_class == SolverExit::Timeout)
    throw std::runtime_error("decide: solver failed: " + r.diagnostics);
  bool sat = r.exit_class == SolverExit::Sat;
  return kind == QueryKind::Credulous ? sat : !sat;
}

}  // namespace yadf
