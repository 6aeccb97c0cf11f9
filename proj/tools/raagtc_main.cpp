// raagtc: exact bounds and machine-checkable witnesses for the R-infinity
// nilpotency index of right-angled Artin groups.
//
// Exit codes: 0 success, 1 unexpected failure, 2 parse error, 3 domain
// error, 4 resource limit, 5 failed re-verification of a stored claim.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "raag/rinfty.h"

namespace {

using namespace raag;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Graph load_graph(const std::string& path, const std::string& format) {
    std::string text = slurp(path);
    if (format == "doc") return parse_graph_doc(text);
    return parse_edgelist(text);
}

json load_doc(const std::string& path) {
    std::string text = slurp(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

// dump(2) with a trailing newline; "-" or empty path means stdout
void emit(const json& doc, const std::string& out_path) {
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw resource_error("cannot write " + out_path);
    out << text;
}

// Cycle notation over class indices, e.g. "(0 1)(2)"; commas also separate
// entries within a cycle.
std::vector<std::vector<int>> parse_cycle_spec(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') throw parse_error("psi: expected '(' in cycle notation");
        ++i;
        std::vector<int> cyc;
        for (;;) {
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip();
            }
            if (i >= text.size()) throw parse_error("psi: unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start) throw parse_error("psi: expected a class index");
            cyc.push_back(std::stoi(text.substr(start, i - start)));
        }
        if (cyc.empty()) throw parse_error("psi: empty cycle");
        cycles.push_back(cyc);
        skip();
    }
    if (cycles.empty()) throw parse_error("psi: no cycles given");
    return cycles;
}

std::vector<int> parse_sign_list(const std::string& text) {
    std::vector<int> signs;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        std::string t = a == std::string::npos ? "" : tok.substr(a, b - a + 1);
        if (t == "+" || t == "+1")
            signs.push_back(1);
        else if (t == "-" || t == "-1")
            signs.push_back(-1);
        else
            throw parse_error("signs: expected '+' or '-', got \"" + t + "\"");
    }
    if (signs.empty()) throw parse_error("signs: empty list");
    return signs;
}

// Permutation of coherent classes from written cycles; every class exactly once.
std::vector<int> psi_from_cycles(int n_classes, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> psi(static_cast<size_t>(n_classes), -1);
    for (const auto& cyc : cycles)
        for (size_t j = 0; j < cyc.size(); ++j) {
            int a = cyc[j], b = cyc[(j + 1) % cyc.size()];
            if (a < 0 || a >= n_classes)
                throw domain_error("psi: class index " + std::to_string(a) + " out of range");
            if (psi[static_cast<size_t>(a)] != -1)
                throw domain_error("psi: class " + std::to_string(a) + " appears twice");
            psi[static_cast<size_t>(a)] = b;
        }
    for (int a = 0; a < n_classes; ++a)
        if (psi[static_cast<size_t>(a)] == -1)
            throw domain_error("psi: class " + std::to_string(a) + " is not covered");
    return psi;
}

// Signs are given per written cycle; the certificate wants them in canonical
// cycle order (each cycle keyed by its smallest class).
std::vector<int> align_signs(const QuotientGraph& q, const std::vector<int>& psi,
                             const std::vector<std::vector<int>>& written,
                             const std::vector<int>& written_signs) {
    if (written_signs.size() != written.size())
        throw domain_error("signs: need exactly one sign per cycle, got " +
                           std::to_string(written_signs.size()) + " for " +
                           std::to_string(written.size()) + " cycles");
    CycleDecomposition cd = cycle_decomposition(q, psi);
    std::vector<int> out;
    for (const auto& cyc : cd.cycles) {
        int lead = cyc[0];
        size_t at = written.size();
        for (size_t j = 0; j < written.size(); ++j)
            for (int cls : written[j])
                if (cls == lead) at = j;
        out.push_back(written_signs[at]);
    }
    return out;
}

void verify_document(const std::string& path) {
    json doc = load_doc(path);
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw parse_error(path + ": document has no kind");
    std::string kind = doc["kind"].get<std::string>();
    if (kind == "lower-bound-witness") {
        LowerBoundWitness w = witness_from_doc(doc);
        verify_lower_bound_witness(w);
        if (witness_to_doc(w).dump() != doc.dump())
            throw theorem_error("witness document does not round-trip");
    } else if (kind == "upper-bound-certificate") {
        UpperBoundCertificate cert = certificate_from_doc(doc);
        verify_upper_bound_certificate(cert);
        if (certificate_to_doc(cert).dump() != doc.dump())
            throw theorem_error("certificate document does not round-trip");
    } else if (kind == "report") {
        if (!doc.contains("graph")) throw parse_error(path + ": report has no graph");
        Graph g = parse_graph_doc(doc["graph"].dump());
        if (analyze_graph(g).dump() != doc.dump())
            throw theorem_error("report does not match a fresh analysis");
    } else if (kind == "census") {
        if (!doc.contains("rows") || !doc["rows"].is_array() || doc["rows"].empty())
            throw parse_error(path + ": census has no rows");
        int n_max = static_cast<int>(doc["rows"].size());
        CensusResult r = census(n_max, 1, doc.contains("detail"));
        if (census_to_doc(r).dump() != doc.dump())
            throw theorem_error("census document does not match a fresh enumeration");
    } else {
        throw parse_error(path + ": unknown document kind \"" + kind + "\"");
    }
    std::cout << "verified: " << kind << " (" << path << ")\n";
}

} // namespace

int main(int argc, char** argv) try {
    using namespace raag;
    CLI::App app{"exact bounds and verified witnesses for the R-infinity nilpotency "
                 "index of right-angled Artin groups"};
    app.require_subcommand(1);
    unsigned long long seed = 0;
    app.add_option("--seed", seed,
                   "seed for randomized sampling (reserved; the bundled commands are "
                   "deterministic and ignore it)");

    std::string in_path, out_path, format = "edgelist";
    std::string psi_spec, sign_spec;
    long dim_cap = 5000, det_cap = 300, budget = 100000;
    int census_n = 1, jobs = 1;
    bool detail = false;
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "input format")
            ->capture_default_str()
            ->check(CLI::IsMember({"edgelist", "doc"}));
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "print invariants, coherent components, and index bounds of a graph");
    analyze->add_option("path", in_path, "graph file")->required();
    add_format(analyze);
    analyze->callback([&] { emit(analyze_graph(load_graph(in_path, format)), "-"); });

    CLI::App* lower = app.add_subcommand(
        "witness-lower", "build and self-verify a lower-bound witness at xi - 1");
    lower->add_option("path", in_path, "graph file")->required();
    add_format(lower);
    lower->add_option("-o,--out", out_path, "output file (default stdout)");
    lower->add_option("--dim-cap", dim_cap, "largest free Lie layer materialized")->capture_default_str();
    lower->add_option("--class-bound", det_cap,
                      "largest quotient layer taken through a determinant")
        ->capture_default_str();
    lower->add_option("--budget", budget,
                      "multiplicity vectors visited by the exponent-safety check")
        ->capture_default_str();
    lower->callback([&] {
        LowerBoundWitness w = lower_bound_witness(load_graph(in_path, format), dim_cap, det_cap, budget);
        verify_lower_bound_witness(w);
        emit(witness_to_doc(w), out_path);
    });

    CLI::App* upper = app.add_subcommand(
        "certify-upper", "build and self-verify an upper-bound certificate at degree <= Xi");
    upper->add_option("path", in_path, "graph file")->required();
    add_format(upper);
    upper->add_option("-o,--out", out_path, "output file (default stdout)");
    upper->add_option("--psi", psi_spec, "quotient automorphism as cycles of class indices, e.g. \"(0 1)(2)\"")
        ->required();
    upper->add_option("--signs", sign_spec, "one sign per written cycle, e.g. \"+,-\"")->required();
    upper->callback([&] {
        Graph g = load_graph(in_path, format);
        QuotientGraph q = quotient_graph(g);
        std::vector<std::vector<int>> cycles = parse_cycle_spec(psi_spec);
        std::vector<int> psi = psi_from_cycles(q.size(), cycles);
        std::vector<int> signs = align_signs(q, psi, cycles, parse_sign_list(sign_spec));
        UpperBoundCertificate cert = upper_bound_certificate(g, psi, signs);
        verify_upper_bound_certificate(cert);
        emit(certificate_to_doc(cert), out_path);
    });

    CLI::App* verify = app.add_subcommand(
        "verify", "recompute every claim of a stored document; exit 0 only on full success");
    verify->add_option("path", in_path, "document file")->required();
    verify->callback([&] { verify_document(in_path); });

    CLI::App* census_cmd =
        app.add_subcommand("census", "isomorphism census with bound statistics for 1..n vertices");
    census_cmd->add_option("n", census_n, "largest vertex count (<= 7)")->required();
    census_cmd->add_option("--jobs", jobs, "worker threads (output is identical for any value)")
        ->capture_default_str();
    census_cmd->add_flag("--detail", detail, "include one entry per isomorphism class");
    census_cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    census_cmd->callback([&] { emit(census_to_doc(census(census_n, jobs, detail)), out_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
} catch (const raag::parse_error& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return 2;
} catch (const raag::domain_error& e) {
    std::cerr << "error (domain): " << e.what() << "\n";
    return 3;
} catch (const raag::resource_error& e) {
    std::cerr << "error (resource): " << e.what() << "\n";
    return 4;
} catch (const raag::theorem_error& e) {
    std::cerr << "error (verification): " << e.what() << "\n";
    return 5;
} catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
}
