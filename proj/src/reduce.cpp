#include "monocirc/reduce.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "monocirc/error.hpp"

namespace monocirc {

namespace {

void require_bits(std::string_view s, std::string_view what) {
    for (char c : s) {
        if (c != '0' && c != '1') throw ReductionError(std::string(what) + ": '" + std::string(s) + "' is not a 0/1 string");
    }
}

std::string left_pad(std::string_view s, std::size_t width) {
    return std::string(width - std::min(width, s.size()), '0') + std::string(s);
}

}  // namespace

std::string pair(std::string_view a, std::string_view b) {
    require_bits(a, "pair");
    require_bits(b, "pair");
    if (a.empty() || b.empty()) throw ReductionError("pair: arguments must be non-empty");
    const std::size_t k = std::max(a.size(), b.size());
    const std::string pa = left_pad(a, k), pb = left_pad(b, k);
    std::string out;
    out.reserve(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
        out.push_back(pb[j]);
        out.push_back(pa[j]);
    }
    return out;
}

std::pair<std::string, std::string> unpair(std::string_view p) {
    require_bits(p, "unpair");
    if (p.size() % 2 != 0) throw ReductionError("unpair: odd length " + std::to_string(p.size()));
    std::string a, b;
    for (std::size_t j = 0; j < p.size(); j += 2) {
        b.push_back(p[j]);
        a.push_back(p[j + 1]);
    }
    return {a, b};
}

std::string to_binary(std::uint64_t x) {
    if (x == 0) return "0";
    std::string out;
    for (int bit = 63 - std::countl_zero(x); bit >= 0; --bit) out.push_back(((x >> bit) & 1u) ? '1' : '0');
    return out;
}

std::uint64_t from_binary(std::string_view bits) {
    require_bits(bits, "from_binary");
    if (bits.empty()) throw ReductionError("from_binary: empty string");
    std::uint64_t x = 0;
    for (char c : bits) {
        if (x > (std::numeric_limits<std::uint64_t>::max() >> 1)) throw ReductionError("from_binary: overflow");
        x = (x << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return x;
}

std::uint64_t bin_to_unary(std::string_view x) { return from_binary(x); }

std::string unary_to_bin(std::string_view wire) {
    require_bits(wire, "unary_to_bin");
    const std::size_t first_one = std::min(wire.find('1'), wire.size());
    if (wire.find('0', first_one) != std::string_view::npos) {
        throw ReductionError("unary_to_bin: '" + std::string(wire) + "' is not of the form 0*1*");
    }
    return to_binary(wire.size() - first_one);
}

std::string unary_wire(std::uint64_t k, std::uint64_t z) {
    if (k > z) throw ReductionError("unary_wire: count " + std::to_string(k) + " exceeds width " + std::to_string(z));
    return std::string(z - k, '0') + std::string(k, '1');
}

std::string unary_word(std::uint64_t k) { return std::string(k, '1'); }

std::optional<std::uint64_t> unary_length(std::string_view word) {
    if (word.find_first_not_of('1') != std::string_view::npos) return std::nullopt;
    return word.size();
}

std::uint64_t pair_numbers(std::uint64_t a, std::uint64_t b) { return from_binary(pair(to_binary(a), to_binary(b))); }

std::pair<std::uint64_t, std::uint64_t> unpair_number(std::uint64_t k) {
    std::string bits = to_binary(k);
    if (bits.size() % 2 != 0) bits.insert(bits.begin(), '0');
    const auto [a, b] = unpair(bits);
    return {from_binary(a), from_binary(b)};
}

std::vector<std::uint64_t> tau_prime(const QueryTransform& tau, std::string_view w, Polarity polarity) {
    const char encoded = polarity == Polarity::Or ? '1' : '0';
    std::vector<std::uint64_t> out;
    for (const std::string& x : tau(w)) {
        require_bits(x, "tau_prime query");
        for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] == encoded ? pair_numbers(i, x.size()) : 1);
        out.push_back(pair_numbers(x.size(), x.size()));
    }
    return out;
}

std::uint64_t tau_prime_padding_width(std::size_t word_length) {
    const std::size_t len = std::max<std::size_t>(word_length, 1);
    const unsigned ceil_log = static_cast<unsigned>(std::bit_width(len - 1));
    const unsigned exponent = 2 * (ceil_log + 1);
    if (exponent >= 64) throw ReductionError("tau_prime_padding_width: width overflows");
    return std::uint64_t{1} << exponent;
}

std::vector<std::string> serialize_unary_tuple(std::span<const std::uint64_t> counts, std::uint64_t z) {
    std::vector<std::string> out;
    out.reserve(counts.size());
    for (std::uint64_t k : counts) out.push_back(unary_wire(k, z));
    return out;
}

bool oracle_machine_mf(const CircuitFamily& family, std::uint64_t k) {
    if (family.mode() != FamilyMode::Uniform || !family.polarity()) {
        throw ReductionError("M_f needs a uniform single-polarity family, got " + family.construction());
    }
    const Polarity polarity = *family.polarity();
    if (k == 1) return polarity == Polarity::And;
    const auto [i, n] = unpair_number(k);
    if (i > n) {
        throw ReductionError("M_f: 1^" + std::to_string(k) + " decodes to <" + std::to_string(i) + "," +
                             std::to_string(n) + ">, index beyond length");
    }
    const Circuit circuit = family.for_length(n);
    if (!has_single_polarity(circuit, polarity)) {
        throw ReductionError("M_f: generator(" + std::to_string(n) + ") of " + family.construction() +
                             " is not a single-polarity circuit");
    }
    const GateKind forcing = polarity == Polarity::Or ? GateKind::Const1 : GateKind::Const0;
    std::vector<VertexId> sources;
    for (GateId g = 0; g < circuit.gates().size(); ++g) {
        const Gate& gate = circuit.gate(g);
        const bool hit = i < n ? (gate.kind == GateKind::Input && gate.index == i) : gate.kind == forcing;
        if (hit) sources.push_back(g);
    }
    const Digraph graph = wire_graph(circuit);
    const VertexId out = circuit.output();
    if (polarity == Polarity::Or) {
        return std::any_of(sources.begin(), sources.end(),
                           [&](VertexId s) { return reachable(graph, s, std::span<const VertexId>(&out, 1)); });
    }
    // Co-nondeterministic side: accept iff every witness path is certified absent.
    return std::all_of(sources.begin(), sources.end(),
                       [&](VertexId s) { return unreachable_inductive_counting(graph, s, out); });
}

std::string r_map(std::span<const std::uint64_t> counts, Polarity polarity, std::size_t q) {
    const bool or_side = polarity == Polarity::Or;
    std::string out(q, or_side ? '0' : '1');
    for (std::uint64_t k : counts) {
        if (k < 1 || k > q) {
            throw ReductionError("r_map: query 1^" + std::to_string(k) + " outside [1, " + std::to_string(q) + "]");
        }
        out[k - 1] = or_side ? '1' : '0';
    }
    return out;
}

std::string_view to_string(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::Many: return "m";
        case ReductionKind::Dtt: return "dtt";
        case ReductionKind::Ctt: return "ctt";
        case ReductionKind::Tt: return "tt";
        case ReductionKind::Turing: return "T";
    }
    return "?";
}

std::optional<ReductionKind> reduction_kind_from_string(std::string_view name) {
    for (ReductionKind k : {ReductionKind::Many, ReductionKind::Dtt, ReductionKind::Ctt, ReductionKind::Tt,
                            ReductionKind::Turing}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

bool apply_reduction(const ReductionSpec& spec, std::string_view w, const Membership& oracle) {
    if (spec.kind == ReductionKind::Turing) {
        if (!spec.turing) throw ReductionError(spec.name + ": Turing reduction without a procedure");
        return spec.turing(w, oracle);
    }
    if (!spec.tau) throw ReductionError(spec.name + ": missing query transform");
    const std::vector<std::string> queries = spec.tau(w);
    switch (spec.kind) {
        case ReductionKind::Many:
            if (queries.size() != 1) {
                throw ReductionError(spec.name + ": many-one reduction produced " + std::to_string(queries.size()) +
                                     " queries");
            }
            return oracle(queries.front());
        case ReductionKind::Dtt:
            return std::any_of(queries.begin(), queries.end(), [&](const std::string& a) { return oracle(a); });
        case ReductionKind::Ctt:
            return std::all_of(queries.begin(), queries.end(), [&](const std::string& a) { return oracle(a); });
        case ReductionKind::Tt: {
            if (!spec.sigma) throw ReductionError(spec.name + ": tt reduction without a truth table");
            const std::string table = spec.sigma(w);
            if (queries.size() >= 20 || table.size() != (std::size_t{1} << queries.size())) {
                throw ReductionError(spec.name + ": truth table of " + std::to_string(table.size()) + " rows for " +
                                     std::to_string(queries.size()) + " queries");
            }
            require_bits(table, spec.name + " truth table");
            std::size_t row = 0;
            for (std::size_t i = 0; i < queries.size(); ++i) row |= static_cast<std::size_t>(oracle(queries[i])) << i;
            return table[row] == '1';
        }
        case ReductionKind::Turing: break;
    }
    return false;
}

ReductionSpec lift_reduction(const ReductionSpec& spec, ReductionKind target) {
    if (spec.kind != ReductionKind::Many) {
        throw ReductionError(spec.name + ": only many-one reductions lift, got " + std::string(to_string(spec.kind)));
    }
    if (target != ReductionKind::Dtt && target != ReductionKind::Ctt) {
        throw ReductionError("lift target must be dtt or ctt");
    }
    ReductionSpec lifted = spec;
    lifted.kind = target;
    lifted.name = spec.name + "_as_" + std::string(to_string(target));
    return lifted;
}

struct TallyOracle::State {
    std::string name;
    std::function<bool(std::uint64_t)> contains;
    std::mutex mutex;
    std::unordered_map<std::uint64_t, bool> memo;
};

TallyOracle TallyOracle::from_set(std::set<std::uint64_t> lengths) {
    std::string name = "{";
    for (auto it = lengths.begin(); it != lengths.end(); ++it) name += (it == lengths.begin() ? "" : ",") + std::to_string(*it);
    name += "}";
    return from_procedure(std::move(name), [lengths = std::move(lengths)](std::uint64_t k) { return lengths.count(k) > 0; });
}

TallyOracle TallyOracle::from_machine(TuringMachine machine) {
    validate_machine(machine);
    if (machine.input_alphabet != "1") throw ReductionError(machine.name + " is not a tally machine");
    std::string name = machine.name;
    return from_procedure(std::move(name),
                          [m = std::move(machine)](std::uint64_t k) { return accepts(m, unary_word(k)); });
}

TallyOracle TallyOracle::from_procedure(std::string name, std::function<bool(std::uint64_t)> contains) {
    TallyOracle o;
    o.state_ = std::make_shared<State>();
    o.state_->name = std::move(name);
    o.state_->contains = std::move(contains);
    return o;
}

const std::string& TallyOracle::name() const { return state_->name; }

bool TallyOracle::contains(std::uint64_t k) const {
    {
        std::lock_guard lock(state_->mutex);
        if (auto it = state_->memo.find(k); it != state_->memo.end()) return it->second;
    }
    // Computed outside the lock; concurrent duplicates compute the same answer.
    const bool answer = state_->contains(k);
    std::lock_guard lock(state_->mutex);
    state_->memo.emplace(k, answer);
    return answer;
}

bool TallyOracle::member(std::string_view word) const {
    const auto k = unary_length(word);
    return k && contains(*k);
}

TallyPredicate TallyOracle::predicate() const {
    return [self = *this](std::size_t i) { return self.contains(i); };
}

Membership TallyOracle::membership() const {
    return [self = *this](std::string_view w) { return self.member(w); };
}

TallyOracle mf_oracle(const CircuitFamily& family) {
    return TallyOracle::from_procedure("M_f(" + family.construction() + ":" + family.source() + ")",
                                       [family](std::uint64_t k) { return oracle_machine_mf(family, k); });
}

Membership family_membership(const CircuitFamily& family) {
    struct Cache {
        std::mutex mutex;
        std::unordered_map<std::size_t, std::shared_ptr<const Circuit>> circuits;
    };
    auto cache = std::make_shared<Cache>();
    return [family, cache](std::string_view x) {
        std::shared_ptr<const Circuit> circuit;
        {
            std::lock_guard lock(cache->mutex);
            if (auto it = cache->circuits.find(x.size()); it != cache->circuits.end()) circuit = it->second;
        }
        if (!circuit) {
            circuit = std::make_shared<const Circuit>(family.for_length(x.size()));
            std::lock_guard lock(cache->mutex);
            cache->circuits.emplace(x.size(), circuit);
        }
        return evaluate(*circuit, x);
    };
}

namespace {

std::int64_t param(const std::map<std::string, std::int64_t>& params, const std::string& key, std::int64_t fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

QueryTransform builtin_transform(std::string_view name, const std::map<std::string, std::int64_t>& params) {
    if (name == "identity") {
        return [](std::string_view w) { return std::vector<std::string>{std::string(w)}; };
    }
    if (name == "prefixes") {
        return [](std::string_view w) {
            std::vector<std::string> out;
            for (std::size_t len = 0; len <= w.size(); ++len) out.emplace_back(w.substr(0, len));
            return out;
        };
    }
    if (name == "halves") {
        return [](std::string_view w) {
            const std::size_t left = (w.size() + 1) / 2;
            return std::vector<std::string>{std::string(w.substr(0, left)), std::string(w.substr(left))};
        };
    }
    if (name == "blocks") {
        const std::int64_t size = param(params, "size", 2);
        if (size < 1) throw ReductionError("blocks: size must be positive");
        return [size = static_cast<std::size_t>(size)](std::string_view w) {
            std::vector<std::string> out;
            for (std::size_t at = 0; at < w.size(); at += size) out.emplace_back(w.substr(at, size));
            return out;
        };
    }
    if (name == "one_positions" || name == "zero_positions") {
        const std::int64_t offset = param(params, "offset", 1);
        if (offset < 0) throw ReductionError(std::string(name) + ": offset must be non-negative");
        const char marked = name == "one_positions" ? '1' : '0';
        return [marked, offset = static_cast<std::size_t>(offset)](std::string_view w) {
            std::vector<std::string> out;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] == marked) out.push_back(unary_word(i + offset));
            }
            return out;
        };
    }
    if (name == "run_lengths") {
        return [](std::string_view w) {
            std::vector<std::string> out;
            std::size_t run = 0;
            for (std::size_t i = 0; i <= w.size(); ++i) {
                if (i < w.size() && w[i] == '1') {
                    ++run;
                } else if (run > 0) {
                    out.push_back(unary_word(run));
                    run = 0;
                }
            }
            return out;
        };
    }
    throw ReductionError("unknown query transform '" + std::string(name) + "'");
}

std::vector<std::string> builtin_transform_names() {
    return {"identity", "prefixes", "halves", "blocks", "one_positions", "zero_positions", "run_lengths"};
}

std::function<bool(std::string_view, const Membership&)> builtin_turing_procedure(std::string_view name,
                                                                                   QueryTransform tau) {
    if (name != "first_member_parity") throw ReductionError("unknown Turing procedure '" + std::string(name) + "'");
    return [tau = std::move(tau)](std::string_view w, const Membership& oracle) {
        const auto queries = tau(w);
        for (std::size_t i = 0; i < queries.size(); ++i) {
            if (oracle(queries[i])) return i % 2 == 0;
        }
        return false;
    };
}

}  // namespace monocirc
