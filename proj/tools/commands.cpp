#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "alibi/bench.hpp"
#include "alibi/container.hpp"
#include "alibi/error.hpp"

namespace alibi::cli {

namespace {

struct GenConfig {
    SyntheticSpec spec;
    std::string out_prefix;
};

int cmd_gen(const GenConfig& cfg, std::ostream& out) {
    SyntheticCollection coll = gen_synthetic(cfg.spec);
    std::string fasta_path = cfg.out_prefix + ".fasta";
    std::string aln_path = cfg.out_prefix + ".aln";
    std::ofstream fasta(fasta_path, std::ios::binary | std::ios::trunc);
    if (!fasta) throw IoError("cannot write " + fasta_path);
    fasta << coll.fasta;
    std::ofstream aln(aln_path, std::ios::binary | std::ios::trunc);
    if (!aln) throw IoError("cannot write " + aln_path);
    aln << coll.alignments;
    out << "fasta=" << fasta_path << "\n"
        << "alignments=" << aln_path << "\n"
        << "genomes=" << cfg.spec.genome_count << "\n"
        << "base_length=" << cfg.spec.base_length << "\n";
    return 0;
}

struct BuildLzConfig {
    std::string fasta;
    std::string out;
    uint32_t m = 100;
    uint32_t k = 0;
    bool dedup = false;
    HybridBuildOptions options;
};

int cmd_build_lz(const BuildLzConfig& cfg, std::ostream& out) {
    ConcatenatedText text = concatenate(load_fasta(cfg.fasta));
    HybridBuildOptions options = cfg.options;
    options.dedup = cfg.dedup;
    HybridIndex index = HybridIndex::build(text, cfg.m, cfg.k, options);
    save_index(index, cfg.out);
    out << "n=" << text.size() << "\n"
        << "z=" << index.grid().phrase_count() << "\n"
        << "kernel_length=" << index.kernel().bytes.size() << "\n"
        << "cuts=" << index.kernel().cuts_in_t.size() << "\n"
        << "sources=" << index.grid().size() << "\n"
        << "index_bytes=" << std::filesystem::file_size(cfg.out) << "\n";
    return 0;
}

struct BuildAlibiConfig {
    std::string fasta;
    std::string aln;
    std::string ref_id;
    std::string out;
    uint32_t m = 100;
    uint32_t k = 0;
    bool exclude_reference = false;
    bool verbose = false;
    AlibiBuildOptions options;
};

int cmd_build_alibi(const BuildAlibiConfig& cfg, std::ostream& out) {
    std::vector<GenomeRecord> records = load_fasta(cfg.fasta);
    std::vector<AlignmentScript> scripts = load_alignment_file(cfg.aln);
    std::string ref = cfg.ref_id.empty() ? records.front().id : cfg.ref_id;
    AlibiBuildOptions options = cfg.options;
    options.include_reference = !cfg.exclude_reference;
    AlibiIndex index = AlibiIndex::build(records, scripts, ref, cfg.m, cfg.k, options);
    save_index(index, cfg.out);
    out << "genomes=" << index.genomes().size() << "\n"
        << "reference=" << ref << "\n"
        << "distinct_marked_substrings=" << index.catalog().size() << "\n"
        << "grid_markers=" << index.grid().size() << "\n"
        << "kernel_length=" << index.kernel_index().text_length() << "\n"
        << "index_bytes=" << std::filesystem::file_size(cfg.out) << "\n";
    if (cfg.verbose) {
        for (const CatalogEntry& e : index.catalog())
            out << "marked_substring=" << index.kernel_index().extract(e.kernel_start, e.length)
                << "\n";
    }
    return 0;
}

struct QueryConfig {
    std::string index;
    std::string pattern;
    std::string patterns_file;
    uint32_t k = 0;
    bool count_only = false;
};

int cmd_query(const QueryConfig& cfg, std::ostream& out) {
    AnyIndex index = load_index(cfg.index);
    std::vector<std::string> patterns;
    if (!cfg.pattern.empty()) patterns.push_back(cfg.pattern);
    if (!cfg.patterns_file.empty()) {
        std::ifstream in(cfg.patterns_file);
        if (!in) throw IoError("cannot open pattern file: " + cfg.patterns_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) patterns.push_back(line);
        }
    }
    const std::vector<GenomeSpan>& genomes =
        std::holds_alternative<HybridIndex>(index) ? std::get<HybridIndex>(index).genomes()
                                                   : std::get<AlibiIndex>(index).genomes();
    auto find = [&](const std::string& p) {
        return std::holds_alternative<HybridIndex>(index)
                   ? std::get<HybridIndex>(index).find_all(p, cfg.k)
                   : std::get<AlibiIndex>(index).find_all(p, cfg.k);
    };
    for (const std::string& p : patterns) {
        std::vector<Occurrence> occs = find(p);
        if (cfg.count_only) {
            out << occs.size() << "\n";
            continue;
        }
        for (const Occurrence& o : occs) {
            // global -> (genome, local); occurrences never span separators
            auto it = std::upper_bound(genomes.begin(), genomes.end(), o.global_start,
                                       [](uint64_t pos, const GenomeSpan& g) {
                                           return pos < g.global_start;
                                       });
            const GenomeSpan& g = *std::prev(it);
            out << g.id << '\t' << o.global_start - g.global_start + 1 << '\t' << o.length
                << '\t' << o.edit_distance << "\n";
        }
    }
    return 0;
}

int cmd_stats(const std::string& path, std::ostream& out) {
    ContainerStats stats = index_stats(path);
    out << "kind=" << (stats.kind == IndexKind::hybrid ? "hybrid" : "alibi") << "\n"
        << "version=" << stats.version << "\n";
    uint64_t total = 0;
    for (const SectionInfo& s : stats.sections) {
        out << "section." << s.tag << "=" << s.bytes << "\n";
        total += s.bytes;
    }
    out << "sections_total=" << total << "\n"
        << "header_bytes=" << stats.header_bytes << "\n"
        << "file_bytes=" << stats.file_bytes << "\n";
    return 0;
}

struct BenchConfig {
    BenchSpec spec;
    std::string sizes = "10,20,30,40";
    std::string out_path;
};

int cmd_bench(const BenchConfig& cfg, std::ostream& out) {
    BenchSpec spec = cfg.spec;
    spec.sizes.clear();
    std::stringstream ss(cfg.sizes);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) spec.sizes.push_back(static_cast<uint32_t>(std::stoul(item)));
    std::string csv = bench_csv(run_scaling_bench(spec));
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write " + cfg.out_path);
        f << csv;
    }
    out << csv;
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hybrid compressed indexes for repetitive sequence collections"};
    app.require_subcommand(1);

    GenConfig gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic collection");
    gen_cmd->add_option("--len", gen.spec.base_length, "Reference length")->required();
    gen_cmd->add_option("--genomes", gen.spec.genome_count, "Number of genomes")->required();
    gen_cmd->add_option("--snp", gen.spec.snp_rate, "Substitution rate per base");
    gen_cmd->add_option("--indel", gen.spec.indel_rate, "Indel rate per base");
    gen_cmd->add_option("--max-indel", gen.spec.max_indel_len, "Maximum indel length");
    gen_cmd->add_option("--seed", gen.spec.seed, "Random seed");
    gen_cmd->add_option("--out-prefix", gen.out_prefix, "Output prefix")->required();

    BuildLzConfig lz;
    CLI::App* lz_cmd = app.add_subcommand("build-lz", "Build the LZ77 hybrid index");
    lz_cmd->add_option("--fasta", lz.fasta, "Input FASTA")->required();
    lz_cmd->add_option("--M", lz.m, "Maximum pattern length")->required();
    lz_cmd->add_option("--K", lz.k, "Maximum edit distance");
    lz_cmd->add_flag("--dedup", lz.dedup, "Remove duplicate kernel segments");
    lz_cmd->add_option("--gap-sample-rate", lz.options.gap_sample_rate, "Gap list sample rate");
    lz_cmd->add_option("--sa-sample-rate", lz.options.sa_sample_rate, "Locate sample rate");
    lz_cmd->add_option("--out", lz.out, "Output index path")->required();

    BuildAlibiConfig ab;
    CLI::App* ab_cmd = app.add_subcommand("build-alibi", "Build the alignment-based index");
    ab_cmd->add_option("--fasta", ab.fasta, "Input FASTA")->required();
    ab_cmd->add_option("--aln", ab.aln, "Alignment script file")->required();
    ab_cmd->add_option("--ref", ab.ref_id, "Reference genome id (default: first record)");
    ab_cmd->add_option("--M", ab.m, "Maximum pattern length")->required();
    ab_cmd->add_option("--K", ab.k, "Maximum edit distance");
    ab_cmd->add_flag("--exclude-ref", ab.exclude_reference,
                     "Leave reference occurrences out of query results");
    ab_cmd->add_flag("--verbose", ab.verbose, "List distinct marked substrings");
    ab_cmd->add_option("--gap-sample-rate", ab.options.gap_sample_rate, "Gap list sample rate");
    ab_cmd->add_option("--sa-sample-rate", ab.options.sa_sample_rate, "Locate sample rate");
    ab_cmd->add_option("--out", ab.out, "Output index path")->required();

    QueryConfig q;
    CLI::App* q_cmd = app.add_subcommand("query", "Query an index");
    q_cmd->add_option("--index", q.index, "Index file")->required();
    auto* popt = q_cmd->add_option("--pattern", q.pattern, "Pattern to search");
    auto* fopt = q_cmd->add_option("--patterns", q.patterns_file, "File with one pattern per line");
    popt->excludes(fopt);
    q_cmd->add_option("--k", q.k, "Edit distance bound");
    q_cmd->add_flag("--count", q.count_only, "Print occurrence counts only");

    std::string stats_path;
    CLI::App* stats_cmd = app.add_subcommand("stats", "Print index section sizes");
    stats_cmd->add_option("--index", stats_path, "Index file")->required();

    BenchConfig bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Run the scaling benchmark");
    bench_cmd->add_option("--len", bench.spec.base_length, "Reference length");
    bench_cmd->add_option("--snp", bench.spec.snp_rate, "Substitution rate per base");
    bench_cmd->add_option("--indel", bench.spec.indel_rate, "Indel rate per base");
    bench_cmd->add_option("--max-indel", bench.spec.max_indel_len, "Maximum indel length");
    bench_cmd->add_option("--seed", bench.spec.seed, "Random seed");
    bench_cmd->add_option("--M", bench.spec.m, "Maximum pattern length");
    bench_cmd->add_option("--K", bench.spec.k, "Maximum edit distance");
    bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated genome counts");
    bench_cmd->add_option("--patterns", bench.spec.pattern_count, "Timing patterns per size");
    bench_cmd->add_option("--pattern-len", bench.spec.pattern_length, "Timing pattern length");
    bench_cmd->add_flag("--no-timing",
                        [&bench](int64_t) { bench.spec.with_timing = false; },
                        "Skip query timing (sizes only)");
    bench_cmd->add_option("--out", bench.out_path, "CSV output path");

    std::vector<const char*> argv;
    argv.push_back("alibi");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out);
        if (lz_cmd->parsed()) return cmd_build_lz(lz, out);
        if (ab_cmd->parsed()) return cmd_build_alibi(ab, out);
        if (q_cmd->parsed()) {
            if (q.pattern.empty() && q.patterns_file.empty()) {
                err << "error: query needs --pattern or --patterns\n";
                return 2;
            }
            return cmd_query(q, out);
        }
        if (stats_cmd->parsed()) return cmd_stats(stats_path, out);
        if (bench_cmd->parsed()) return cmd_bench(bench, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace alibi::cli
