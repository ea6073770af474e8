#include "icatt/driver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "icatt/elaborate.hpp"
#include "icatt/equiv.hpp"
#include "icatt/normalize.hpp"
#include "icatt/parser.hpp"
#include "icatt/printer.hpp"

namespace icatt {

std::string format_error(const std::string& path, const Error& e) {
    std::ostringstream os;
    os << path;
    if (e.located()) os << ":" << e.line() << ":" << e.column();
    os << ": error[" << category_name(e.kind()) << "]: " << e.what();
    return os.str();
}

namespace {

void trace(const Elaborated& el, std::ostream& out) {
    const Decl& d = el.decl;
    out << "  " << show(d.ctx) << " |- " << d.name << " : " << brief(show(d.type, d.ctx)) << "\n";
    for (std::size_t i = 0; i < el.instances.size(); ++i) {
        const Instance& in = el.instances[i];
        out << "    uses " << in.schema;
        if (in.suspension > 0) out << " suspended " << in.suspension << "x";
        out << " at " << brief(show(in.args, el.instance_contexts[i], in.params), 300) << "\n";
    }
}

} // namespace

CheckResult check_source(Environment& env, const std::string& text, const std::string& path,
                         const CheckOptions& options, std::ostream& out) {
    CheckResult result;
    std::vector<SurfaceDecl> decls;
    try {
        decls = parse(text);
    } catch (const Error& e) {
        out << format_error(path, e) << "\n";
        result.errors.push_back(e);
        ++result.rejected;
        return result;
    }
    for (const auto& sd : decls) {
        try {
            Elaborated el = elaborate_decl(env, sd);
            try {
                check_decl(env, el.decl);
            } catch (Error& e) {
                if (!e.located()) e.locate(sd.span.line, sd.span.column);
                throw;
            }
            ++result.accepted;
            out << "accepted " << keyword_name(sd.keyword) << " " << sd.name << "\n";
            if (options.verbose) trace(el, out);
            if (options.dump_nf && *options.dump_nf == sd.name) {
                const Decl& d = el.decl;
                out << "nf " << d.name << " = " << show(nf(d.ctx, d.body), d.ctx) << "\n";
                out << "   : " << show(nf(d.ctx, d.type), d.ctx) << "\n";
            }
        } catch (const Error& e) {
            out << format_error(path, e) << "\n";
            result.errors.push_back(e);
            ++result.rejected;
            if (!options.keep_going) break;
        }
    }
    return result;
}

namespace {

bool read_file(const std::string& path, std::string& text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return true;
}

struct FileRun {
    std::string output;
    int rejected = 0;
    bool unreadable = false;
};

FileRun check_file(const std::string& path, const CheckOptions& options) {
    FileRun run;
    std::string text;
    if (!read_file(path, text)) {
        run.output = path + ": error[usage]: cannot read file\n";
        run.unreadable = true;
        return run;
    }
    Environment env;
    std::ostringstream os;
    CheckResult r = check_source(env, text, path, options, os);
    run.output = os.str();
    run.rejected = r.rejected;
    return run;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"icatt: type checker for CaTT with invertibility structures", "icatt"};
    app.require_subcommand(0, 1);
    std::optional<int> neutral_count, equiv_trunc, gamma_n;
    app.add_option("--neutral-count", neutral_count, "print the number of neutral terms of dimension N")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--equiv-trunc", equiv_trunc, "print the truncation E^{1,N} in concrete syntax")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--check-gamma", gamma_n, "check the comparison map gamma^N")->check(CLI::NonNegativeNumber);

    CheckOptions options;
    std::vector<std::string> files;
    std::string dump;
    int jobs = 1;
    CLI::App* check = app.add_subcommand("check", "check .catt files");
    check->add_option("files", files, "source files")->required();
    check->add_option("--dump-nf", dump, "print the normal form of the named declaration");
    check->add_flag("--verbose,-v", options.verbose, "print judgments and schema instances");
    check->add_flag("--keep-going,-k", options.keep_going, "continue after a rejected declaration");
    check->add_option("--jobs,-j", jobs, "check up to N files concurrently")->check(CLI::PositiveNumber);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "icatt: " << e.what() << "\n" << "try 'icatt --help'\n";
        return 2;
    }
    if (!dump.empty()) options.dump_nf = dump;

    bool analysis = neutral_count || equiv_trunc || gamma_n;
    if (!analysis && !check->parsed()) {
        err << "icatt: nothing to do\n" << app.help();
        return 2;
    }
    int status = 0;
    try {
        if (neutral_count) out << enumerate_neutrals(*neutral_count).size() << "\n";
        if (equiv_trunc) out << telescope_text(equiv_truncation(*equiv_trunc).ctx) << "\n";
        if (gamma_n) {
            GammaReport r = check_gamma(*gamma_n);
            out << format_report(r);
            if (!r.ok) status = 1;
        }
    } catch (const Error& e) {
        err << "icatt: error[" << category_name(e.kind()) << "]: " << e.what() << "\n";
        return e.kind() == ErrorKind::Bound ? 2 : 1;
    }
    if (!check->parsed()) return status;

    std::vector<FileRun> runs(files.size());
    if (jobs <= 1 || files.size() <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) {
            runs[i] = check_file(files[i], options);
            out << runs[i].output << std::flush;
            if (runs[i].rejected > 0 && !options.keep_going) break;
        }
    } else {
        std::size_t next = 0;
        while (next < files.size()) {
            std::vector<std::thread> pool;
            std::size_t end = std::min(files.size(), next + static_cast<std::size_t>(jobs));
            for (std::size_t i = next; i < end; ++i)
                pool.emplace_back([&, i] { runs[i] = check_file(files[i], options); });
            for (auto& t : pool) t.join();
            next = end;
        }
        for (const auto& r : runs) out << r.output;
    }
    for (const auto& r : runs) {
        if (r.unreadable) return 2;
        if (r.rejected > 0) status = 1;
    }
    return status;
}

} // namespace icatt
