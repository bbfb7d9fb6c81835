// bytestore command-line tool: gen, ingest, advise, query, bench, inspect.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bytestore/bench.hpp"
#include "bytestore/csv.hpp"
#include "bytestore/error.hpp"
#include "bytestore/query.hpp"
#include "bytestore/store.hpp"
#include "bytestore/zipf.hpp"

namespace bs = bytestore;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bs::UsageError("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Writes to `path`, or standard output when empty or "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw bs::UsageError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct IngestArgs {
    std::string csv = "-";
    std::string schema;
    std::string layout = "advisor";
    std::string cost = "wall";
    unsigned reps = 5;
    std::size_t literals = 100;
    bool subsample = false;
    unsigned lanes = 32;
    std::optional<std::uint64_t> seed;
};

void add_ingest_flags(CLI::App* cmd, IngestArgs& a, bool allow_layout) {
    cmd->add_option("--csv", a.csv, "input CSV with a header row; '-' reads standard input")->capture_default_str();
    cmd->add_option("--schema", a.schema, "JSON schema file; column kinds are inferred when omitted");
    if (allow_layout) {
        cmd->add_option("--layout", a.layout, "advisor, or a layout forced on every column the schema leaves open")
            ->capture_default_str();
    }
    cmd->add_option("--cost", a.cost, "advisor cost model: wall (median scan time) or bytes (counted loads)")
        ->check(CLI::IsMember({"wall", "bytes"}))
        ->capture_default_str();
    cmd->add_option("--reps", a.reps, "timed repetitions per profiling literal")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--literals", a.literals, "profiling literals per column")->check(CLI::Range(2, 100000))->capture_default_str();
    cmd->add_flag("--subsample", a.subsample, "profile at most 10^6 evenly strided rows");
    cmd->add_option("--lanes", a.lanes, "codes per scan block (8, 16, 32 or 64)")->capture_default_str();
    cmd->add_option("--seed", a.seed, "generator seed to record in the manifest");
}

bs::Store run_ingest(const IngestArgs& a, bool allow_layout, std::vector<bs::IngestReportRow>& report) {
    const auto table = bs::parse_csv(read_file(a.csv));
    bs::Schema schema = a.schema.empty() ? bs::Schema::infer(table) : bs::Schema::parse_json(read_file(a.schema));
    bs::IngestOptions opts;
    if (allow_layout && a.layout != "advisor") {
        const auto l = bs::parse_layout(a.layout);
        if (!l) throw bs::UsageError("unknown layout '" + a.layout + "'");
        opts.layout = *l;
    }
    if (!allow_layout) {
        for (auto& c : schema.columns) c.layout.reset();
    }
    opts.advisor.model = *bs::parse_cost_model(a.cost);
    opts.advisor.reps = a.reps;
    opts.advisor.literal_count = a.literals;
    opts.advisor.subsample = a.subsample;
    opts.lanes = bs::LaneConfig::make(a.lanes);
    opts.seed = a.seed;
    return bs::Store::ingest(table, schema, opts, &report);
}

void print_report(std::ostream& out, const std::vector<bs::IngestReportRow>& report) {
    bs::write_csv_row(out, {"column", "kind", "layout", "chosen_by", "distinct", "bits_per_code", "encode_ms",
                            "advise_ms", "cost_model", "auc_byteslice", "auc_ppvbs"});
    for (const auto& r : report) {
        bs::write_csv_row(out, {r.name, std::string(bs::to_string(r.kind)), std::string(bs::to_string(r.layout)),
                                r.chosen_by, std::to_string(r.distinct), num(r.bits_per_code), num(r.encode_ms),
                                num(r.advise_ms), r.advice ? std::string(bs::to_string(r.advice->model)) : "",
                                r.advice ? num(r.advice->auc_byteslice) : "", r.advice ? num(r.advice->auc_ppvbs) : ""});
    }
}

template <class T>
std::vector<T> split_list(const std::string& s, T (*parse)(const std::string&)) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse(item));
    }
    if (out.empty()) throw bs::UsageError("empty list '" + s + "'");
    return out;
}

double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw bs::UsageError("'" + s + "' is not a number");
}

unsigned parse_unsigned(const std::string& s) {
    const double v = parse_double(s);
    if (v < 0 || v != static_cast<unsigned>(v)) throw bs::UsageError("'" + s + "' is not a non-negative integer");
    return static_cast<unsigned>(v);
}

bs::Layout parse_layout_arg(const std::string& s) {
    const auto l = bs::parse_layout(s);
    if (!l) throw bs::UsageError("unknown layout '" + s + "'");
    return *l;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Column store with byte-sliced and variable-length byte-sliced layouts"};
    app.require_subcommand(1);

    // gen
    bs::ZipfSpec gen_spec;
    std::string gen_column = "v";
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "emit a Zipf-distributed integer column as CSV");
    gen->add_option("--skew,-s", gen_spec.skew, "Zipf skew; 0 is uniform")->capture_default_str();
    gen->add_option("--domain-bits,-d", gen_spec.domain_bits, "domain is [0, 2^d), 4 <= d <= 24")->capture_default_str();
    gen->add_option("--rows,-n", gen_spec.n_rows, "number of rows")->capture_default_str();
    gen->add_option("--seed", gen_spec.seed, "mt19937_64 seed")->capture_default_str();
    gen->add_option("--column", gen_column, "header name")->capture_default_str();
    gen->add_option("--out,-o", gen_out, "output file (default standard output)");

    // ingest
    IngestArgs ingest_args;
    std::string ingest_out;
    std::string ingest_report;
    auto* ingest = app.add_subcommand("ingest", "encode a CSV into a store file");
    add_ingest_flags(ingest, ingest_args, true);
    ingest->add_option("--out,-o", ingest_out, "store file to write")->required();
    ingest->add_option("--report", ingest_report, "write the ingestion report CSV here ('-' for standard output)");

    // advise
    IngestArgs advise_args;
    auto* advise = app.add_subcommand("advise", "profile every column and print the layout advice as CSV");
    add_ingest_flags(advise, advise_args, false);

    // query
    std::string query_store;
    std::string query_where;
    std::string query_select = "*";
    unsigned query_threads = 1;
    bool query_timing = false;
    auto* query = app.add_subcommand("query", "filter a store and print the projected rows as CSV");
    query->add_option("--store", query_store, "store file")->required();
    query->add_option("--where,-w", query_where, "predicate: col OP lit [AND ...] [OR ...]; OP in < > <= >= = != BETWEEN");
    query->add_option("--select", query_select, "comma-separated projection, or *")->capture_default_str();
    query->add_option("--threads", query_threads, "scan threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    query->add_flag("--timing", query_timing, "print per-column scan and lookup time to standard error");

    // bench
    std::string bench_skews = "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2";
    std::string bench_d = "12";
    std::string bench_sel = "0.1,0.5,0.9";
    std::string bench_layouts = "bitpacked,byteslice,vbp,pevbp,ppvbs";
    bs::BenchSweep sweep;
    unsigned bench_lanes = 32;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "scan/lookup time per code over a Zipf sweep, as CSV");
    bench->add_option("--skews", bench_skews, "comma-separated skews")->capture_default_str();
    bench->add_option("--domain-bits", bench_d, "comma-separated domain bits")->capture_default_str();
    bench->add_option("--rows,-n", sweep.n_rows, "rows per generated column")->capture_default_str();
    bench->add_option("--selectivities", bench_sel, "comma-separated target selectivities")->capture_default_str();
    bench->add_option("--layouts", bench_layouts, "comma-separated layouts")->capture_default_str();
    bench->add_option("--reps", sweep.reps, "timed repetitions (median reported)")->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--threads", sweep.threads, "scan threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    bench->add_option("--lanes", bench_lanes, "codes per scan block")->capture_default_str();
    bench->add_option("--seed", sweep.seed, "generator seed")->capture_default_str();
    bench->add_option("--out,-o", bench_out, "output file (default standard output)");

    // inspect
    std::string inspect_store;
    auto* inspect = app.add_subcommand("inspect", "print the manifest and per-column sizes as JSON");
    inspect->add_option("store", inspect_store, "store file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*gen) {
            const auto values = bs::gen_zipf(gen_spec);
            Output out(gen_out);
            bs::write_csv_row(out.stream(), {gen_column});
            for (auto v : values) out.stream() << v << '\n';
        } else if (*ingest) {
            std::vector<bs::IngestReportRow> report;
            const auto store = run_ingest(ingest_args, true, report);
            store.save(ingest_out);
            if (!ingest_report.empty()) {
                Output out(ingest_report);
                print_report(out.stream(), report);
            }
        } else if (*advise) {
            std::vector<bs::IngestReportRow> report;
            (void)run_ingest(advise_args, false, report);
            print_report(std::cout, report);
        } else if (*query) {
            const auto store = bs::Store::load(query_store);
            bs::Query q;
            q.disjuncts = bs::parse_where(query_where);
            q.projection = bs::parse_projection(query_select, store);
            bs::ExecuteOptions opts;
            opts.threads = query_threads;
            const auto result = bs::execute(store, q, opts);
            bs::write_csv_row(std::cout, result.header);
            const std::size_t rows = result.columns.empty() ? 0 : result.columns.front().size();
            std::vector<std::string> line(result.columns.size());
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < result.columns.size(); ++c) line[c] = result.columns[c][r];
                bs::write_csv_row(std::cout, line);
            }
            if (query_timing) {
                std::cerr << "rows_selected=" << result.row_count() << '\n';
                for (const auto& t : result.timings) {
                    std::cerr << t.column << ": scan_ms=" << num(t.scan_ms) << " lookup_ms=" << num(t.lookup_ms) << '\n';
                }
            }
        } else if (*bench) {
            sweep.skews = split_list<double>(bench_skews, parse_double);
            sweep.domain_bits = split_list<unsigned>(bench_d, parse_unsigned);
            sweep.selectivities = split_list<double>(bench_sel, parse_double);
            sweep.layouts = split_list<bs::Layout>(bench_layouts, parse_layout_arg);
            sweep.lanes = bs::LaneConfig::make(bench_lanes);
            Output out(bench_out);
            bs::write_csv_row(out.stream(), bs::bench_header());
            bs::run_bench(sweep, [&](const bs::BenchRow& r) {
                bs::write_bench_row(out.stream(), r);
                out.stream().flush();
            });
        } else if (*inspect) {
            const auto store = bs::Store::load(inspect_store);
            auto j = store.manifest();
            for (std::size_t i = 0; i < store.columns().size(); ++i) {
                const auto& c = store.columns()[i];
                nlohmann::json size;
                size["bytes"] = bs::layout_memory_bytes(c.physical());
                size["bits_per_code"] = bs::bits_per_code(c.physical());
                if (const auto* vbs = std::get_if<bs::VbsColumn>(&c.physical())) {
                    const auto r = vbs->size_report();
                    size["slice_bytes"] = r.slice_bytes;
                    size["mask_bytes"] = r.mask_bytes;
                    size["directory_bytes"] = r.directory_bytes;
                }
                j["columns"][i]["size"] = size;
            }
            std::cout << j.dump(2) << '\n';
        }
    } catch (const bs::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const bs::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 2;
    }
    return 0;
}
