#include "alibi/seq.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace alibi {

std::pair<std::string_view, uint64_t> ConcatenatedText::project(uint64_t global_start,
                                                                uint64_t length) const {
    if (global_start == 0 || length == 0 || global_start + length - 1 > size())
        throw BoundsError("projection interval outside T");
    auto it = std::upper_bound(genomes_.begin(), genomes_.end(), global_start,
                               [](uint64_t pos, const GenomeSpan& g) { return pos < g.global_start; });
    if (it == genomes_.begin()) throw ProjectionError("interval starts on a separator");
    const GenomeSpan& g = *std::prev(it);
    uint64_t genome_end = g.global_start + g.length - 1;
    if (global_start > genome_end) throw ProjectionError("interval starts on a separator");
    if (global_start + length - 1 > genome_end)
        throw ProjectionError("interval crosses a genome separator");
    return {g.id, global_start - g.global_start + 1};
}

uint64_t ConcatenatedText::to_global(std::string_view genome_id, uint64_t local_start) const {
    for (const GenomeSpan& g : genomes_) {
        if (g.id == genome_id) {
            if (local_start == 0 || local_start > g.length)
                throw BoundsError("local position outside genome " + g.id);
            return g.global_start + local_start - 1;
        }
    }
    throw BoundsError("unknown genome id: " + std::string(genome_id));
}

bool ConcatenatedText::interval_has_separator(uint64_t global_start, uint64_t length) const {
    if (global_start == 0 || global_start + length - 1 > size())
        throw BoundsError("interval outside T");
    auto begin = bytes_.begin() + static_cast<ptrdiff_t>(global_start - 1);
    return std::find(begin, begin + static_cast<ptrdiff_t>(length),
                     static_cast<char>(kSeparator)) != begin + static_cast<ptrdiff_t>(length);
}

ConcatenatedText concatenate(const std::vector<GenomeRecord>& genomes) {
    if (genomes.empty()) throw ValidationError("empty genome collection");
    ConcatenatedText t;
    for (size_t i = 0; i < genomes.size(); ++i) {
        const GenomeRecord& g = genomes[i];
        if (g.bases.empty()) throw ValidationError("genome " + g.id + " is empty");
        if (g.bases.find(static_cast<char>(kSeparator)) != std::string::npos)
            throw ReservedByteError("genome " + g.id + " contains the reserved separator byte");
        if (i > 0) t.bytes_.push_back(static_cast<char>(kSeparator));
        t.genomes_.push_back({g.id, t.bytes_.size() + 1, g.bases.size()});
        t.bytes_ += g.bases;
    }
    return t;
}

std::vector<GenomeRecord> parse_fasta(std::string_view text) {
    std::vector<GenomeRecord> out;
    size_t line_no = 0;
    size_t pos = 0;
    bool have_record = false;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            if (line[0] == '>') {
                std::string_view header = line.substr(1);
                size_t ws = header.find_first_of(" \t");
                std::string id(header.substr(0, ws));
                if (id.empty())
                    throw ParseError("FASTA line " + std::to_string(line_no) + ": empty record id");
                out.push_back({std::move(id), {}});
                have_record = true;
            } else {
                if (!have_record)
                    throw ParseError("FASTA line " + std::to_string(line_no) +
                                     ": sequence data before any '>' header");
                for (char c : line) {
                    if (std::isspace(static_cast<unsigned char>(c)))
                        throw ParseError("FASTA line " + std::to_string(line_no) +
                                         ": whitespace inside sequence");
                    char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                    if (static_cast<uint8_t>(up) == kSeparator)
                        throw ReservedByteError("FASTA line " + std::to_string(line_no) +
                                                ": sequence contains the reserved byte '#'");
                    out.back().bases.push_back(up);
                }
            }
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (out.empty()) throw ParseError("FASTA input contains no records");
    for (const GenomeRecord& g : out)
        if (g.bases.empty()) throw ParseError("FASTA record " + g.id + " has no sequence");
    return out;
}

std::vector<GenomeRecord> load_fasta(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open FASTA file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_fasta(ss.str());
}

std::string format_fasta(const std::vector<GenomeRecord>& genomes, size_t line_width) {
    std::string out;
    for (const GenomeRecord& g : genomes) {
        out += '>';
        out += g.id;
        out += '\n';
        for (size_t i = 0; i < g.bases.size(); i += line_width) {
            out.append(g.bases, i, std::min(line_width, g.bases.size() - i));
            out += '\n';
        }
    }
    return out;
}

uint64_t AlignmentScript::ref_length() const {
    uint64_t n = 0;
    for (const EditOp& op : ops)
        if (op.kind != EditOp::Kind::ins) n += op.length;
    return n;
}

std::string apply_alignment(std::string_view reference, const AlignmentScript& script) {
    if (script.ref_length() != reference.size())
        throw ValidationError("alignment script for " + script.genome_id + " consumes " +
                              std::to_string(script.ref_length()) + " reference bases, reference has " +
                              std::to_string(reference.size()));
    std::string out;
    size_t ref_pos = 0;
    for (const EditOp& op : script.ops) {
        switch (op.kind) {
            case EditOp::Kind::match:
                out.append(reference.substr(ref_pos, op.length));
                ref_pos += op.length;
                break;
            case EditOp::Kind::subst:
                if (op.bases.size() != op.length)
                    throw ValidationError("substitution token length mismatch in script for " +
                                          script.genome_id);
                out.append(op.bases);
                ref_pos += op.length;
                break;
            case EditOp::Kind::ins:
                if (op.bases.size() != op.length)
                    throw ValidationError("insertion token length mismatch in script for " +
                                          script.genome_id);
                out.append(op.bases);
                break;
            case EditOp::Kind::del:
                ref_pos += op.length;
                break;
        }
    }
    return out;
}

namespace {

EditOp parse_token(std::string_view tok, size_t line_no) {
    size_t i = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    if (i == 0 || i == tok.size())
        throw ParseError("alignment line " + std::to_string(line_no) + ": bad token '" +
                         std::string(tok) + "'");
    uint64_t len = std::stoull(std::string(tok.substr(0, i)));
    if (len == 0)
        throw ParseError("alignment line " + std::to_string(line_no) + ": zero-length token");
    char op = tok[i];
    std::string_view rest = tok.substr(i + 1);
    switch (op) {
        case '=':
            if (!rest.empty()) break;
            return {EditOp::Kind::match, len, {}};
        case 'X':
            if (rest.size() != len) break;
            return {EditOp::Kind::subst, len, std::string(rest)};
        case 'I':
            if (rest.size() != len) break;
            return {EditOp::Kind::ins, len, std::string(rest)};
        case 'D':
            if (!rest.empty()) break;
            return {EditOp::Kind::del, len, {}};
        default:
            break;
    }
    throw ParseError("alignment line " + std::to_string(line_no) + ": bad token '" +
                     std::string(tok) + "'");
}

}  // namespace

std::vector<AlignmentScript> parse_alignment_file(std::string_view text) {
    std::vector<AlignmentScript> out;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            size_t tab = line.find('\t');
            if (tab == std::string_view::npos || tab == 0)
                throw ParseError("alignment line " + std::to_string(line_no) +
                                 ": expected `genome_id <TAB> tokens`");
            AlignmentScript script;
            script.genome_id = std::string(line.substr(0, tab));
            std::string_view rest = line.substr(tab + 1);
            size_t p = 0;
            while (p < rest.size()) {
                while (p < rest.size() && rest[p] == ' ') ++p;
                if (p >= rest.size()) break;
                size_t q = rest.find(' ', p);
                if (q == std::string_view::npos) q = rest.size();
                script.ops.push_back(parse_token(rest.substr(p, q - p), line_no));
                p = q;
            }
            if (script.ops.empty())
                throw ParseError("alignment line " + std::to_string(line_no) + ": no tokens");
            out.push_back(std::move(script));
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

std::vector<AlignmentScript> load_alignment_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open alignment file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_alignment_file(ss.str());
}

std::string format_alignment_script(const AlignmentScript& script) {
    std::string out = script.genome_id;
    out += '\t';
    for (size_t i = 0; i < script.ops.size(); ++i) {
        const EditOp& op = script.ops[i];
        if (i > 0) out += ' ';
        out += std::to_string(op.length);
        switch (op.kind) {
            case EditOp::Kind::match: out += '='; break;
            case EditOp::Kind::subst: out += 'X'; out += op.bases; break;
            case EditOp::Kind::ins: out += 'I'; out += op.bases; break;
            case EditOp::Kind::del: out += 'D'; break;
        }
    }
    return out;
}

}  // namespace alibi
