#include "raag/trace_monoid.h"

#include <sstream>

namespace raag {

Word trace_normal_form(const Graph& g, const Word& w) {
    Word rest = w, out;
    out.reserve(w.size());
    while (!rest.empty()) {
        // smallest letter whose first occurrence can commute to the front
        int best = -1;
        size_t best_pos = 0;
        for (size_t i = 0; i < rest.size(); ++i) {
            int x = rest[i];
            bool movable = true;
            for (size_t j = 0; j < i && movable; ++j)
                if (rest[j] == x || g.adjacent(rest[j], x)) movable = false;
            if (movable && (best < 0 || x < best)) {
                best = x;
                best_pos = i;
            }
        }
        out.push_back(best);
        rest.erase(rest.begin() + static_cast<long>(best_pos));
    }
    return out;
}

TraceElement trace_add(const TraceElement& a, const TraceElement& b) {
    TraceElement r = a;
    for (const auto& [w, c] : b) {
        Rat& v = r[w];
        v += c;
        if (v == 0) r.erase(w);
    }
    return r;
}

TraceElement trace_scale(const TraceElement& a, const Rat& s) {
    TraceElement r;
    if (s == 0) return r;
    for (const auto& [w, c] : a) r[w] = c * s;
    return r;
}

TraceElement trace_mul(const Graph& g, const TraceElement& a, const TraceElement& b) {
    TraceElement r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            w = trace_normal_form(g, w);
            Rat& v = r[w];
            v += ca * cb;
            if (v == 0) r.erase(w);
        }
    return r;
}

TraceElement trace_bracket(const Graph& g, const TraceElement& a, const TraceElement& b) {
    return trace_add(trace_mul(g, a, b), trace_scale(trace_mul(g, b, a), Rat(-1)));
}

std::string trace_digest(const TraceElement& t) {
    std::ostringstream s;
    for (const auto& [w, c] : t) {
        for (int x : w) s << x << ".";
        s << ":" << rat_str(c) << ";";
    }
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s.str()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex;
    for (int i = 15; i >= 0; --i) hex << ((h >> (4 * i)) & 0xf);
    return hex.str();
}

} // namespace raag
