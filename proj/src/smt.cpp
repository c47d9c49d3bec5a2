#include "polybound/smt.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

extern char **environ;

namespace polybound {

SmtOptions SmtOptions::from_env() {
    SmtOptions o;
    if (const char *p = std::getenv("POLYBOUND_SMT"); p != nullptr && *p != '\0') {
        o.solver = p;
    }
    return o;
}

std::string smt_symbol(const std::string &name) { return "|" + name + "|"; }

namespace {

std::string smt_int(const Int &v) { return v < 0 ? "(- " + Int(-v).get_str() + ")" : v.get_str(); }

std::string smt_real(const Rat &r) {
    std::string mag = Int(abs(r.get_num())).get_str() + ".0";
    if (r.get_den() != 1) {
        mag = "(/ " + mag + " " + r.get_den().get_str() + ".0)";
    }
    return r < 0 ? "(- " + mag + ")" : mag;
}

std::string smt_const(const Rat &c, bool real) {
    if (real) {
        return smt_real(c);
    }
    if (!is_integral(c)) {
        throw std::invalid_argument("integer SMT term with rational coefficient");
    }
    return smt_int(c.get_num());
}

} // namespace

std::string smt_term(const Polynomial &p, bool real) {
    if (p.is_zero()) {
        return real ? "0.0" : "0";
    }
    std::vector<std::string> terms;
    for (const auto &[mono, coeff] : p.terms()) {
        std::vector<std::string> factors;
        if (coeff != 1 || mono.is_one()) {
            factors.push_back(smt_const(coeff, real));
        }
        for (const auto &[v, e] : mono.factors()) {
            for (unsigned i = 0; i < e; ++i) {
                factors.push_back(smt_symbol(v.name));
            }
        }
        if (factors.size() == 1) {
            terms.push_back(factors.front());
        } else {
            std::string t = "(*";
            for (const auto &f : factors) {
                t += " " + f;
            }
            terms.push_back(t + ")");
        }
    }
    if (terms.size() == 1) {
        return terms.front();
    }
    std::string s = "(+";
    for (const auto &t : terms) {
        s += " " + t;
    }
    return s + ")";
}

std::string smt_formula(const Formula &f) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        if (f.is_true()) {
            return "true";
        }
        if (f.is_false()) {
            return "false";
        }
        return "(> " + smt_term(f.poly(), false) + " 0)";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::string s = f.kind() == Formula::Kind::And ? "(and" : "(or";
        for (const auto &c : f.children()) {
            s += " " + smt_formula(c);
        }
        return s + ")";
    }
    }
    return "true";
}

namespace {

struct Sexp {
    std::string atom;
    std::vector<Sexp> list;
    bool is_list = false;
};

class SexpReader {
public:
    explicit SexpReader(const std::string &s) : s_(s) {}

    bool at_end() {
        skip();
        return i_ >= s_.size();
    }

    Sexp read() {
        skip();
        if (i_ >= s_.size()) {
            throw std::runtime_error("unexpected end of solver output");
        }
        if (s_[i_] == '(') {
            ++i_;
            Sexp e;
            e.is_list = true;
            while (true) {
                skip();
                if (i_ >= s_.size()) {
                    throw std::runtime_error("unbalanced solver output");
                }
                if (s_[i_] == ')') {
                    ++i_;
                    return e;
                }
                e.list.push_back(read());
            }
        }
        if (s_[i_] == ')') {
            throw std::runtime_error("unexpected ')' in solver output");
        }
        Sexp e;
        if (s_[i_] == '|') {
            auto end = s_.find('|', i_ + 1);
            if (end == std::string::npos) {
                throw std::runtime_error("unterminated quoted symbol");
            }
            e.atom = s_.substr(i_ + 1, end - i_ - 1);
            i_ = end + 1;
            return e;
        }
        if (s_[i_] == '"') {
            auto end = s_.find('"', i_ + 1);
            e.atom = s_.substr(i_, end == std::string::npos ? std::string::npos : end - i_ + 1);
            i_ = end == std::string::npos ? s_.size() : end + 1;
            return e;
        }
        std::size_t j = i_;
        while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && s_[j] != '(' && s_[j] != ')') {
            ++j;
        }
        e.atom = s_.substr(i_, j - i_);
        i_ = j;
        return e;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            ++i_;
        }
    }

    const std::string &s_;
    std::size_t i_ = 0;
};

Rat parse_decimal(const std::string &t) {
    auto dot = t.find('.');
    if (dot == std::string::npos) {
        return Rat(Int(t));
    }
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    Int num(digits.empty() ? "0" : digits);
    return make_rat(num, ipow(Int(10), t.size() - dot - 1));
}

Rat value_of(const Sexp &e) {
    if (!e.is_list) {
        return parse_decimal(e.atom);
    }
    if (e.list.empty() || e.list.front().is_list) {
        throw std::runtime_error("malformed value in solver output");
    }
    const std::string &op = e.list.front().atom;
    if (op == "-" && e.list.size() == 2) {
        return -value_of(e.list[1]);
    }
    if (op == "-" && e.list.size() == 3) {
        return value_of(e.list[1]) - value_of(e.list[2]);
    }
    if (op == "/" && e.list.size() == 3) {
        return value_of(e.list[1]) / value_of(e.list[2]);
    }
    if (op == "+") {
        Rat s = 0;
        for (std::size_t i = 1; i < e.list.size(); ++i) {
            s += value_of(e.list[i]);
        }
        return s;
    }
    throw std::runtime_error("unsupported value form '" + op + "' in solver output");
}

struct ProcessResult {
    bool ok = false;
    bool timed_out = false;
    std::string out;
    std::string error;
};

ProcessResult run_process(const std::string &solver, const std::string &script_path, unsigned timeout_ms) {
    ProcessResult res;
    int pipefd[2];
    if (pipe(pipefd) != 0) {
        res.error = std::string("pipe: ") + std::strerror(errno);
        return res;
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, pipefd[1], STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, pipefd[1], STDERR_FILENO);
    posix_spawn_file_actions_addclose(&actions, pipefd[0]);
    std::vector<std::string> args{solver, script_path};
    std::vector<char *> argv;
    for (auto &a : args) {
        argv.push_back(a.data());
    }
    argv.push_back(nullptr);
    pid_t pid = 0;
    int rc = posix_spawnp(&pid, solver.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    close(pipefd[1]);
    if (rc != 0) {
        close(pipefd[0]);
        res.error = "cannot execute SMT solver '" + solver + "': " + std::strerror(rc);
        return res;
    }
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    char buf[4096];
    while (true) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            res.timed_out = true;
            break;
        }
        pollfd pfd{pipefd[0], POLLIN, 0};
        int pr = poll(&pfd, 1, static_cast<int>(left.count()));
        if (pr < 0 && errno == EINTR) {
            continue;
        }
        if (pr <= 0) {
            res.timed_out = pr == 0;
            break;
        }
        ssize_t n = read(pipefd[0], buf, sizeof buf);
        if (n <= 0) {
            break;
        }
        res.out.append(buf, static_cast<std::size_t>(n));
    }
    close(pipefd[0]);
    if (res.timed_out) {
        kill(pid, SIGKILL);
    }
    int status = 0;
    waitpid(pid, &status, 0);
    if (!res.timed_out && WIFEXITED(status) && WEXITSTATUS(status) == 127) {
        res.error = "SMT solver '" + solver + "' could not be executed";
        return res;
    }
    res.ok = !res.timed_out;
    return res;
}

class TempFile {
public:
    explicit TempFile(const std::string &contents) {
        std::string tmpl = "/tmp/polybound-XXXXXX.smt2";
        int fd = mkstemps(tmpl.data(), 5);
        if (fd < 0) {
            throw std::runtime_error(std::string("cannot create temporary file: ") + std::strerror(errno));
        }
        path_ = tmpl;
        std::size_t off = 0;
        while (off < contents.size()) {
            ssize_t n = write(fd, contents.data() + off, contents.size() - off);
            if (n <= 0) {
                break;
            }
            off += static_cast<std::size_t>(n);
        }
        close(fd);
    }
    ~TempFile() { unlink(path_.c_str()); }
    TempFile(const TempFile &) = delete;
    TempFile &operator=(const TempFile &) = delete;

    const std::string &path() const { return path_; }

private:
    std::string path_;
};

} // namespace

Rat parse_smt_value(const std::string &text) {
    SexpReader r(text);
    return value_of(r.read());
}

SmtResult run_script(const std::string &script, const std::vector<std::string> &symbols, const SmtOptions &opts) {
    SmtResult res;
    res.transcript = script;
    if (opts.timeout_ms == 0) {
        res.reason = "timeout";
        return res;
    }
    ProcessResult pr;
    try {
        TempFile file(script);
        pr = run_process(opts.solver, file.path(), opts.timeout_ms);
    } catch (const std::exception &e) {
        res.reason = e.what();
        return res;
    }
    res.transcript += "\n;; reply\n" + pr.out;
    if (pr.timed_out) {
        res.reason = "timeout";
        return res;
    }
    if (!pr.ok) {
        res.reason = pr.error;
        return res;
    }
    try {
        SexpReader reader(pr.out);
        if (reader.at_end()) {
            res.reason = "empty solver reply";
            return res;
        }
        Sexp head = reader.read();
        if (head.is_list) {
            res.reason = "unexpected solver reply";
            return res;
        }
        if (head.atom == "unsat") {
            res.kind = SmtResult::Kind::Unsat;
            return res;
        }
        if (head.atom != "sat") {
            res.reason = "solver answered " + head.atom;
            return res;
        }
        if (!symbols.empty()) {
            Sexp values = reader.read();
            if (!values.is_list) {
                res.reason = "malformed get-value reply";
                return res;
            }
            for (const auto &pair : values.list) {
                if (!pair.is_list || pair.list.size() != 2 || pair.list[0].is_list) {
                    res.reason = "malformed get-value entry";
                    return res;
                }
                res.model[pair.list[0].atom] = value_of(pair.list[1]);
            }
            for (const auto &s : symbols) {
                if (!res.model.contains(s)) {
                    res.reason = "solver model lacks " + s;
                    res.model.clear();
                    return res;
                }
            }
        }
        res.kind = SmtResult::Kind::Sat;
    } catch (const std::exception &e) {
        res.reason = std::string("cannot parse solver reply: ") + e.what();
        res.model.clear();
    }
    return res;
}

namespace {

std::string script_footer(const std::vector<std::string> &symbols) {
    std::string s = "(check-sat)\n";
    if (!symbols.empty()) {
        s += "(get-value (";
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            s += (i ? " " : "") + smt_symbol(symbols[i]);
        }
        s += "))\n";
    }
    return s + "(exit)\n";
}

} // namespace

SmtResult check_sat_int(const Formula &f, const SmtOptions &opts) {
    std::vector<std::string> symbols;
    for (const auto &v : f.vars()) {
        symbols.push_back(v.name);
    }
    std::ostringstream os;
    os << "(set-option :produce-models true)\n(set-logic QF_NIA)\n";
    for (const auto &s : symbols) {
        os << "(declare-fun " << smt_symbol(s) << " () Int)\n";
    }
    os << "(assert " << smt_formula(f) << ")\n" << script_footer(symbols);
    return run_script(os.str(), symbols, opts);
}

SmtResult check_sat_real(const std::vector<RealConstraint> &constraints, const SmtOptions &opts) {
    std::set<Var> vars;
    bool linear = true;
    for (const auto &c : constraints) {
        auto vs = c.poly.vars();
        vars.insert(vs.begin(), vs.end());
        linear = linear && c.poly.is_linear();
    }
    std::vector<std::string> symbols;
    for (const auto &v : vars) {
        symbols.push_back(v.name);
    }
    std::ostringstream os;
    os << "(set-option :produce-models true)\n(set-logic " << (linear ? "QF_LRA" : "QF_NRA") << ")\n";
    for (const auto &s : symbols) {
        os << "(declare-fun " << smt_symbol(s) << " () Real)\n";
    }
    for (const auto &c : constraints) {
        const char *op = c.rel == RealConstraint::Rel::Ge ? ">=" : c.rel == RealConstraint::Rel::Gt ? ">" : "=";
        os << "(assert (" << op << " " << smt_term(c.poly, true) << " 0.0))\n";
    }
    os << script_footer(symbols);
    return run_script(os.str(), symbols, opts);
}

bool solver_available(const SmtOptions &opts) {
    SmtOptions probe = opts;
    probe.timeout_ms = std::max(opts.timeout_ms, 2000U);
    return check_sat_int(Formula::truth(), probe).sat();
}

} // namespace polybound
