#include "monocirc/fixtures.hpp"

#include <functional>
#include <map>
#include <optional>

#include "monocirc/error.hpp"

namespace monocirc::fixtures {

namespace {

constexpr std::string_view kAccept = "accept";
constexpr std::string_view kReject = "reject";

// A work cell is either blank or a bit vector with one bit per track.
using Cell = std::optional<unsigned>;

struct Act {
    std::string to;
    Cell write;  // nullopt: leave the cell unchanged
    int din = 0;
    int dwork = 0;
};

using Rule = std::function<std::vector<Act>(char in, Cell cell)>;

// Builds machines whose work cells hold several binary tracks, one character
// of `tracks` per track. Counters are stored least significant bit first,
// with cell 0 carrying the 'm' (mark) track so the head can find it again.
class TrackMachineBuilder {
  public:
    TrackMachineBuilder(std::string name, std::string tracks, std::string input_alphabet, SpaceBound space,
                        Acceptance polarity)
        : tracks_(std::move(tracks)) {
        m_.name = std::move(name);
        m_.input_alphabet = std::move(input_alphabet);
        m_.space_bound = space;
        m_.polarity = polarity;
        m_.work_alphabet.emplace_back(kBlank);
        for (unsigned v = 0; v < (1u << tracks_.size()); ++v) m_.work_alphabet.push_back(symbol(v));
    }

    unsigned bit(char track) const { return 1u << tracks_.find(track); }

    void rule(const std::string& state, Rule r) { rules_[state] = std::move(r); }
    bool has_rule(const std::string& state) const { return rules_.count(state) != 0; }

    // Binary increment of `track`, then continue in `next` back at cell 0.
    void increment(const std::string& state, char track, const std::string& next) {
        const unsigned b = bit(track);
        const std::string back = ret(next);
        rule(state, [=](char, Cell c) -> std::vector<Act> {
            if (c && (*c & b)) return {{state, *c & ~b, 0, +1}};
            return {{back, c.value_or(0u) | b, 0, 0}};
        });
    }

    // Clears `track` on the whole used prefix.
    void clear(const std::string& state, char track, const std::string& next) {
        const unsigned b = bit(track);
        const std::string back = ret(next);
        rule(state, [=](char, Cell c) -> std::vector<Act> {
            if (!c) return {{back, std::nullopt, 0, -1}};
            return {{state, *c & ~b, 0, +1}};
        });
    }

    // Compares two tracks for equality over the used prefix.
    void equal(const std::string& state, char a, char b, const std::string& if_equal, const std::string& if_differ) {
        const unsigned ba = bit(a), bb = bit(b);
        const std::string back_equal = ret(if_equal), back_differ = ret(if_differ);
        rule(state, [=](char, Cell c) -> std::vector<Act> {
            if (!c) return {{back_equal, std::nullopt, 0, -1}};
            if (((*c & ba) != 0) != ((*c & bb) != 0)) return {{back_differ, std::nullopt, 0, 0}};
            return {{state, std::nullopt, 0, +1}};
        });
    }

    // Tests whether `track` holds a non-zero value.
    void nonzero(const std::string& state, char track, const std::string& if_set, const std::string& if_zero) {
        const unsigned b = bit(track);
        const std::string back_set = ret(if_set), back_zero = ret(if_zero);
        rule(state, [=](char, Cell c) -> std::vector<Act> {
            if (!c) return {{back_zero, std::nullopt, 0, -1}};
            if (*c & b) return {{back_set, std::nullopt, 0, 0}};
            return {{state, std::nullopt, 0, +1}};
        });
    }

    // Name of the state that walks back to cell 0 and then enters `next`.
    // Halting states are entered directly.
    std::string ret(const std::string& next) {
        if (next == kAccept || next == kReject) return next;
        const std::string name = "ret>" + next;
        if (!has_rule(name)) {
            const unsigned mark = bit('m');
            rule(name, [=](char, Cell c) -> std::vector<Act> {
                if (c && (*c & mark)) return {{next, std::nullopt, 0, 0}};
                return {{name, std::nullopt, 0, -1}};
            });
        }
        return name;
    }

    TuringMachine build(const std::string& start) && {
        m_.start = start;
        m_.accept = std::string(kAccept);
        m_.reject = std::string(kReject);
        m_.states = {start, m_.accept, m_.reject};
        for (const auto& [state, _] : rules_) {
            if (state != start) m_.states.push_back(state);
        }
        std::string inputs = m_.input_alphabet + "_";
        for (const auto& [state, r] : rules_) {
            for (char in : inputs) {
                for (int v = -1; v < static_cast<int>(1u << tracks_.size()); ++v) {
                    const Cell cell = v < 0 ? Cell{} : Cell{static_cast<unsigned>(v)};
                    for (const Act& a : r(in, cell)) {
                        const Cell written = a.write ? a.write : cell;
                        m_.transitions.push_back(Transition{state, in, sym(cell), a.to, sym(written), a.din, a.dwork});
                    }
                }
            }
        }
        validate_machine(m_);
        return std::move(m_);
    }

  private:
    std::string symbol(unsigned v) const {
        std::string s;
        for (std::size_t t = 0; t < tracks_.size(); ++t) s.push_back((v >> t) & 1u ? '1' : '0');
        return s;
    }
    std::string sym(Cell c) const { return c ? symbol(*c) : std::string(kBlank); }

    TuringMachine m_;
    std::string tracks_;
    std::map<std::string, Rule> rules_;
};

// Machines whose work tape is a single blank cell that is never touched.
TuringMachine finite_control(std::string name, std::string input_alphabet, Acceptance polarity) {
    TuringMachine m;
    m.name = std::move(name);
    m.input_alphabet = std::move(input_alphabet);
    m.polarity = polarity;
    m.work_alphabet = {std::string(kBlank)};
    m.space_bound = {0, 1};
    m.accept = std::string(kAccept);
    m.reject = std::string(kReject);
    return m;
}

void step(TuringMachine& m, const std::string& from, char in, const std::string& to, int din) {
    m.transitions.push_back(Transition{from, in, std::string(kBlank), to, std::string(kBlank), din, 0});
}

}  // namespace

TuringMachine accept_immediately() {
    TuringMachine m = finite_control("accept_immediately", "01", Acceptance::Existential);
    m.states = {m.accept, m.reject};
    m.start = m.accept;
    return m;
}

TuringMachine reject_immediately() {
    TuringMachine m = finite_control("reject_immediately", "01", Acceptance::Universal);
    m.states = {m.accept, m.reject};
    m.start = m.reject;
    return m;
}

TuringMachine mod3_length() {
    TuringMachine m = finite_control("mod3_length", "01", Acceptance::Existential);
    m.states = {"r0", "r1", "r2", m.accept, m.reject};
    m.start = "r0";
    for (int r = 0; r < 3; ++r) {
        const std::string here = "r" + std::to_string(r);
        const std::string next = "r" + std::to_string((r + 1) % 3);
        step(m, here, '0', next, +1);
        step(m, here, '1', next, +1);
        step(m, here, '_', r == 0 ? m.accept : m.reject, 0);
    }
    validate_machine(m);
    return m;
}

TuringMachine parity() {
    TuringMachine m = finite_control("parity", "01", Acceptance::Existential);
    m.states = {"even", "odd", m.accept, m.reject};
    m.start = "even";
    step(m, "even", '0', "even", +1);
    step(m, "even", '1', "odd", +1);
    step(m, "odd", '0', "odd", +1);
    step(m, "odd", '1', "even", +1);
    step(m, "even", '_', m.reject, 0);
    step(m, "odd", '_', m.accept, 0);
    validate_machine(m);
    return m;
}

TuringMachine tally_even() {
    TuringMachine m = finite_control("tally_even", "1", Acceptance::Existential);
    m.states = {"even", "odd", m.accept, m.reject};
    m.start = "even";
    step(m, "even", '1', "odd", +1);
    step(m, "odd", '1', "even", +1);
    step(m, "even", '_', m.accept, 0);
    step(m, "odd", '_', m.reject, 0);
    validate_machine(m);
    return m;
}

TuringMachine tally_prime() {
    // Tracks: m = mark, d = candidate divisor, c = position mod d,
    // e = input head position. Two spare cells keep a blank past every
    // counter's used prefix.
    TrackMachineBuilder b("tally_prime", "mdce", "1", SpaceBound{1, 2}, Acceptance::Existential);
    const unsigned m = b.bit('m'), d = b.bit('d');
    b.rule("init", [=](char, Cell) -> std::vector<Act> { return {{"init_d", m, 0, +1}}; });
    b.rule("init_d", [=](char, Cell) -> std::vector<Act> { return {{"scan", d, 0, -1}}; });  // d = 2

    // One pass over the input: count position in e and position mod d in c.
    b.rule("scan", [](char in, Cell) -> std::vector<Act> {
        if (in == '1') return {{"inc_e", std::nullopt, +1, 0}};
        return {{"cmp_de=", std::nullopt, 0, 0}};
    });
    b.increment("inc_e", 'e', "inc_c");
    b.increment("inc_c", 'c', "cmp_cd");
    b.equal("cmp_cd", 'c', 'd', "wrap_c", "scan");
    b.clear("wrap_c", 'c', "scan");

    // End of pass: compare d with k = e, least significant bit first, so the
    // last difference seen decides.
    const unsigned e = b.bit('e');
    const std::string back_test_c = b.ret("test_c");
    for (const char* rel : {"=", "<", ">"}) {
        const std::string state = std::string("cmp_de") + rel;
        b.rule(state, [=](char, Cell c) -> std::vector<Act> {
            if (!c) {
                if (rel[0] == '>') return {{std::string(kReject), std::nullopt, 0, 0}};  // k < 2
                if (rel[0] == '=') return {{std::string(kAccept), std::nullopt, 0, 0}};  // no divisor below k
                return {{back_test_c, std::nullopt, 0, -1}};
            }
            const bool bd = *c & d, be = *c & e;
            const std::string next = bd == be ? state : std::string("cmp_de") + (bd ? ">" : "<");
            return {{next, std::nullopt, 0, +1}};
        });
    }
    b.nonzero("test_c", 'c', "inc_d", std::string(kReject));
    b.increment("inc_d", 'd', "reset_c");
    b.clear("reset_c", 'c', "rewind_test");

    // Rewind: decrement e, moving the input head left once per unit.
    b.nonzero("rewind_test", 'e', "rewind_dec", "scan");
    const std::string back_rewind = b.ret("rewind_test");
    b.rule("rewind_dec", [=](char, Cell c) -> std::vector<Act> {
        if (c && (*c & e)) return {{back_rewind, *c & ~e, -1, 0}};
        return {{"rewind_dec", c.value_or(0u) | e, 0, +1}};
    });
    return std::move(b).build("init");
}

TuringMachine tally_prime_universal() {
    // Tracks: m = mark, d = symbols read before the guess (the divisor),
    // c = symbols read after the guess, mod d.
    TrackMachineBuilder b("tally_prime_universal", "mdc", "1", SpaceBound{1, 1}, Acceptance::Universal);
    const unsigned m = b.bit('m');
    b.rule("init", [=](char, Cell) -> std::vector<Act> { return {{"pre0", m, 0, 0}}; });
    // preN: N = min(symbols read, 2), all counted in d.
    b.rule("pre0", [](char in, Cell) -> std::vector<Act> {
        if (in == '1') return {{"inc_d>pre1", std::nullopt, +1, 0}};
        return {{std::string(kReject), std::nullopt, 0, 0}};
    });
    b.rule("pre1", [](char in, Cell) -> std::vector<Act> {
        if (in == '1') return {{"inc_d>pre2", std::nullopt, +1, 0}};
        return {{std::string(kReject), std::nullopt, 0, 0}};
    });
    b.rule("pre2", [](char in, Cell) -> std::vector<Act> {
        // Branch: keep counting, or fix d = symbols read so far (2 <= d < k).
        if (in == '1') return {{"inc_d>pre2", std::nullopt, +1, 0}, {"post", std::nullopt, 0, 0}};
        return {{std::string(kAccept), std::nullopt, 0, 0}};
    });
    b.increment("inc_d>pre1", 'd', "pre1");
    b.increment("inc_d>pre2", 'd', "pre2");

    b.rule("post", [](char in, Cell) -> std::vector<Act> {
        if (in == '1') return {{"inc_c", std::nullopt, +1, 0}};
        return {{"test_c", std::nullopt, 0, 0}};
    });
    b.increment("inc_c", 'c', "cmp_cd");
    b.equal("cmp_cd", 'c', 'd', "wrap_c", "post");
    b.clear("wrap_c", 'c', "post");
    b.nonzero("test_c", 'c', std::string(kAccept), std::string(kReject));
    return std::move(b).build("init");
}

std::vector<TuringMachine> all_machines() {
    return {accept_immediately(), reject_immediately(), mod3_length(),          parity(),
            tally_even(),         tally_prime(),        tally_prime_universal()};
}

TuringMachine machine_by_name(std::string_view name) {
    for (auto& m : all_machines()) {
        if (m.name == name) return m;
    }
    throw MachineError("unknown fixture machine '" + std::string(name) + "'");
}

}  // namespace monocirc::fixtures
