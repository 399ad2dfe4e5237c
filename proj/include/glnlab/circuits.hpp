#pragma once

// Unbounded fan-in AND/OR/NOT circuits. Depth counts AND/OR gates only; NOT
// gates are free.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "terms.hpp"

namespace glnlab {

struct CircuitStats {
    std::size_t size = 0;          // reachable AND/OR gates
    std::size_t depth = 0;         // alternating AND/OR layers; NOT gates are free
    std::size_t bottom_fanin = 0;  // max fan-in of an AND/OR gate fed only by literals
};

class Circuit {
public:
    enum class Kind { input, constant, negation, conjunction, disjunction };

    struct Gate {
        Kind kind = Kind::constant;
        std::uint64_t bit = 0;  // input
        bool value = false;     // constant
        std::vector<int> children;
    };

    explicit Circuit(std::uint64_t arity) : arity_(arity) {}

    std::uint64_t arity() const { return arity_; }
    int output() const { return output_; }
    const std::vector<Gate>& gates() const { return gates_; }

    int add_input(std::uint64_t bit) {
        if (bit >= arity_) throw EncodingError("input bit " + std::to_string(bit) + " >= arity");
        if (auto it = input_ids_.find(bit); it != input_ids_.end()) return it->second;
        Gate g;
        g.kind = Kind::input;
        g.bit = bit;
        return input_ids_[bit] = push(std::move(g));
    }

    int add_constant(bool value) {
        Gate g;
        g.kind = Kind::constant;
        g.value = value;
        return push(std::move(g));
    }

    int add_not(int child) {
        check_child(child);
        if (auto it = not_ids_.find(child); it != not_ids_.end()) return it->second;
        Gate g;
        g.kind = Kind::negation;
        g.children = {child};
        return not_ids_[child] = push(std::move(g));
    }

    int add_and(std::vector<int> children) { return add_gate(Kind::conjunction, std::move(children)); }
    int add_or(std::vector<int> children) { return add_gate(Kind::disjunction, std::move(children)); }

    // Literal "bit == value".
    int add_literal(std::uint64_t bit, bool value) {
        const int in = add_input(bit);
        return value ? in : add_not(in);
    }

    void set_output(int gate) {
        check_child(gate);
        output_ = gate;
    }

    bool evaluate(const BitString& b) const {
        if (b.size() != arity_) {
            throw EncodingError("circuit arity " + std::to_string(arity_) + " but input has " +
                                std::to_string(b.size()) + " bits");
        }
        return evaluate_with([&](std::uint64_t bit) { return b[bit] != 0; });
    }

    // Input given as a big-endian point (arity <= 64).
    bool evaluate_point(std::uint64_t point) const {
        if (arity_ > 64) throw ScaleError("point evaluation needs arity <= 64");
        return evaluate_with([&](std::uint64_t bit) { return point_bit(point, arity_, bit); });
    }

    CircuitStats stats() const {
        require_output();
        const auto live = reachable();
        std::vector<std::size_t> depth(gates_.size(), 0);
        CircuitStats s;
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            if (!live[g]) continue;
            const Gate& gate = gates_[g];
            switch (gate.kind) {
                case Kind::input:
                case Kind::constant:
                    break;
                case Kind::negation:
                    depth[g] = depth[gate.children[0]];
                    break;
                case Kind::conjunction:
                case Kind::disjunction: {
                    // a child of the same kind shares this layer (AND of ANDs is one AND)
                    std::size_t d = 1;
                    bool literal_fed = true;
                    for (int c : gate.children) {
                        d = std::max(d, depth[c] + (gates_[c].kind == gate.kind ? 0 : 1));
                        literal_fed = literal_fed && is_literal(c);
                    }
                    depth[g] = d;
                    ++s.size;
                    if (literal_fed) s.bottom_fanin = std::max(s.bottom_fanin, gate.children.size());
                    break;
                }
            }
        }
        s.depth = depth[output_];
        return s;
    }

    // Equivalent circuit with NOT gates only directly above inputs.
    Circuit normalized() const {
        require_output();
        Circuit out(arity_);
        std::map<std::pair<int, bool>, int> memo;
        out.set_output(out.copy_with_polarity(*this, output_, false, memo));
        return out;
    }

private:
    int push(Gate g) {
        gates_.push_back(std::move(g));
        return static_cast<int>(gates_.size() - 1);
    }

    void check_child(int child) const {
        if (child < 0 || static_cast<std::size_t>(child) >= gates_.size()) {
            throw EncodingError("gate reference " + std::to_string(child) + " does not exist yet");
        }
    }

    void require_output() const {
        if (output_ < 0) throw PreconditionError("circuit has no output gate");
    }

    int add_gate(Kind kind, std::vector<int> children) {
        for (int c : children) check_child(c);
        Gate g;
        g.kind = kind;
        g.children = std::move(children);
        return push(std::move(g));
    }

    bool is_literal(int g) const {
        const Gate& gate = gates_[g];
        if (gate.kind == Kind::input || gate.kind == Kind::constant) return true;
        return gate.kind == Kind::negation && gates_[gate.children[0]].kind == Kind::input;
    }

    std::vector<bool> reachable() const {
        std::vector<bool> live(gates_.size(), false);
        live[output_] = true;
        for (std::size_t g = gates_.size(); g-- > 0;) {
            if (!live[g]) continue;
            for (int c : gates_[g].children) live[c] = true;
        }
        return live;
    }

    template <class Bit>
    bool evaluate_with(Bit&& bit) const {
        require_output();
        // children precede parents, so one forward pass suffices
        std::vector<std::uint8_t> value(gates_.size(), 0);
        for (std::size_t g = 0; g <= static_cast<std::size_t>(output_); ++g) {
            const Gate& gate = gates_[g];
            switch (gate.kind) {
                case Kind::input:
                    value[g] = bit(gate.bit);
                    break;
                case Kind::constant:
                    value[g] = gate.value;
                    break;
                case Kind::negation:
                    value[g] = !value[gate.children[0]];
                    break;
                case Kind::conjunction:
                    value[g] = std::all_of(gate.children.begin(), gate.children.end(),
                                           [&](int c) { return value[c] != 0; });
                    break;
                case Kind::disjunction:
                    value[g] = std::any_of(gate.children.begin(), gate.children.end(),
                                           [&](int c) { return value[c] != 0; });
                    break;
            }
        }
        return value[output_];
    }

    int copy_with_polarity(const Circuit& src, int g, bool negate,
                           std::map<std::pair<int, bool>, int>& memo) {
        if (auto it = memo.find({g, negate}); it != memo.end()) return it->second;
        const Gate& gate = src.gates_[g];
        int id = -1;
        switch (gate.kind) {
            case Kind::input:
                id = add_literal(gate.bit, !negate);
                break;
            case Kind::constant:
                id = add_constant(gate.value != negate);
                break;
            case Kind::negation:
                id = copy_with_polarity(src, gate.children[0], !negate, memo);
                break;
            case Kind::conjunction:
            case Kind::disjunction: {
                std::vector<int> kids;
                for (int c : gate.children) kids.push_back(copy_with_polarity(src, c, negate, memo));
                const bool is_and = (gate.kind == Kind::conjunction) != negate;
                id = is_and ? add_and(std::move(kids)) : add_or(std::move(kids));
                break;
            }
        }
        return memo[{g, negate}] = id;
    }

    std::uint64_t arity_;
    std::vector<Gate> gates_;
    int output_ = -1;
    std::map<std::uint64_t, int> input_ids_;
    std::map<int, int> not_ids_;
};

inline const char* kind_name(Circuit::Kind kind) {
    switch (kind) {
        case Circuit::Kind::input: return "INPUT";
        case Circuit::Kind::constant: return "CONST";
        case Circuit::Kind::negation: return "NOT";
        case Circuit::Kind::conjunction: return "AND";
        case Circuit::Kind::disjunction: return "OR";
    }
    return "?";
}

// Delta(x_i, y) as the AND of m literals over coordinate i's bits.
inline int add_delta(Circuit& c, std::uint64_t i, Value y, int m) {
    std::vector<int> lits;
    for (int j = 0; j < m; ++j) {
        const std::uint64_t bit = i * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(j);
        lits.push_back(c.add_literal(bit, (y >> (m - 1 - j)) & 1u));
    }
    return c.add_and(std::move(lits));
}

// AND over y of OR over i of Delta(x_i, y): depth 3, 1 + M + N M gates.
inline Circuit build_surj_circuit(const Params& p) {
    Circuit c(p.n);
    std::vector<int> per_value;
    for (Value y = 0; y < p.M; ++y) {
        std::vector<int> deltas;
        for (std::uint64_t i = 0; i < p.N; ++i) deltas.push_back(add_delta(c, i, y, p.m));
        per_value.push_back(c.add_or(std::move(deltas)));
    }
    c.set_output(c.add_and(std::move(per_value)));
    return c;
}

// N coordinates over an alphabet of size N, each written in log2 N bits.
struct TribesParams {
    std::uint64_t N = 0;
    int width = 0;  // bits per coordinate
    Value marked = 0;  // the distinguished value

    Params as_params() const {
        Params p;
        p.m = width;
        p.M = N;
        p.N = N;
        p.n = N * static_cast<std::uint64_t>(width);
        return p;
    }
};

inline TribesParams tribes_params(std::uint64_t N, Value marked = 0) {
    if (N < 2 || (N & (N - 1)) != 0) {
        throw ParameterError("Tribes needs N a power of two >= 2, got " + std::to_string(N));
    }
    if (marked >= N) throw ParameterError("marked value must be < N");
    TribesParams t;
    t.N = N;
    t.marked = marked;
    while ((std::uint64_t{1} << t.width) < N) ++t.width;
    return t;
}

// 1 iff some coordinate holds the marked value.
inline bool f_tribes(const Word& x, const TribesParams& t) {
    return std::find(x.coords.begin(), x.coords.end(), t.marked) != x.coords.end();
}

// OR over i of Delta(x_i, marked): a width log2 N DNF.
inline Circuit build_tribes_circuit(const TribesParams& t) {
    const Params p = t.as_params();
    Circuit c(p.n);
    std::vector<int> terms;
    for (std::uint64_t i = 0; i < t.N; ++i) terms.push_back(add_delta(c, i, t.marked, t.width));
    c.set_output(c.add_or(std::move(terms)));
    return c;
}

// Depth-2 circuit for a DNF (constant 0 when the DNF is empty).
inline Circuit build_dnf_circuit(const Dnf& f, const Params& p) {
    const Dnf bits = f.as_bits(p);
    Circuit c(p.n);
    if (bits.bit_terms.empty()) {
        c.set_output(c.add_constant(false));
        return c;
    }
    std::vector<int> terms;
    for (const auto& t : bits.bit_terms) {
        std::vector<int> lits;
        for (const auto& [pos, bit] : t.literals) lits.push_back(c.add_literal(pos, bit != 0));
        terms.push_back(c.add_and(std::move(lits)));
    }
    c.set_output(c.add_or(std::move(terms)));
    return c;
}

}  // namespace glnlab
