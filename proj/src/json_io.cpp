#include "monocirc/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "monocirc/error.hpp"

namespace monocirc {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw FormatError((path.empty() ? std::string("document") : path) + ": " + message);
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const Json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (std::string_view a : allowed) known = known || a == key;
        if (!known) fail(join(path, key), "unknown field");
    }
}

const Json& field(const Json& obj, const std::string& path, std::string_view key) {
    require_object(obj, path);
    auto it = obj.find(std::string(key));
    if (it == obj.end()) fail(join(path, key), "missing");
    return *it;
}

std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

std::uint64_t as_unsigned(const Json& v, const std::string& path) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        fail(path, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::int64_t as_integer(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

const Json& as_array(const Json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
}

std::string string_field(const Json& obj, const std::string& path, std::string_view key) {
    return as_string(field(obj, path, key), join(path, key));
}

Polarity polarity_of(const Json& v, const std::string& path) {
    const auto p = polarity_from_string(as_string(v, path));
    if (!p) fail(path, "expected \"or\" or \"and\"");
    return *p;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path.string() + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError(path.string() + ": cannot write");
    out << dump_json(doc);
}

Json circuit_to_json(const Circuit& circuit) {
    Json gates = Json::array();
    for (GateId id = 0; id < circuit.gates().size(); ++id) {
        const Gate& g = circuit.gate(id);
        Json j;
        j["id"] = id;
        j["kind"] = to_string(g.kind);
        if (g.kind == GateKind::Input) j["index"] = g.index;
        j["inputs"] = g.inputs;
        gates.push_back(std::move(j));
    }
    Json doc;
    doc["n_inputs"] = circuit.n_inputs();
    doc["output"] = circuit.output();
    doc["gates"] = std::move(gates);
    return doc;
}

Circuit circuit_from_json(const Json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "", {"n_inputs", "output", "gates"});
    const std::size_t n_inputs = as_unsigned(field(doc, "", "n_inputs"), "n_inputs");
    const std::uint64_t output = as_unsigned(field(doc, "", "output"), "output");
    const Json& gates = as_array(field(doc, "", "gates"), "gates");
    std::vector<Gate> out;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string path = at_index("gates", i);
        const Json& g = gates[i];
        require_object(g, path);
        reject_unknown(g, path, {"id", "kind", "index", "inputs"});
        if (as_unsigned(field(g, path, "id"), join(path, "id")) != i) fail(join(path, "id"), "ids must be 0, 1, 2, ...");
        Gate gate;
        const std::string kind = string_field(g, path, "kind");
        const auto k = gate_kind_from_string(kind);
        if (!k) fail(join(path, "kind"), "unknown gate kind '" + kind + "'");
        gate.kind = *k;
        if (gate.kind == GateKind::Input) {
            gate.index = as_unsigned(field(g, path, "index"), join(path, "index"));
        } else if (g.contains("index")) {
            fail(join(path, "index"), "only input gates carry an index");
        }
        const Json& inputs = as_array(field(g, path, "inputs"), join(path, "inputs"));
        for (std::size_t w = 0; w < inputs.size(); ++w) {
            const std::uint64_t from = as_unsigned(inputs[w], at_index(join(path, "inputs"), w));
            if (from > std::numeric_limits<GateId>::max()) fail(at_index(join(path, "inputs"), w), "gate id too large");
            gate.inputs.push_back(static_cast<GateId>(from));
        }
        out.push_back(std::move(gate));
    }
    if (output > std::numeric_limits<GateId>::max()) fail("output", "gate id too large");
    return Circuit(n_inputs, std::move(out), static_cast<GateId>(output));
}

Json machine_to_json(const TuringMachine& m) {
    Json doc;
    doc["name"] = m.name;
    doc["states"] = m.states;
    doc["start"] = m.start;
    doc["accept"] = m.accept;
    doc["reject"] = m.reject;
    doc["polarity"] = to_string(m.polarity);
    doc["input_alphabet"] = m.input_alphabet;
    doc["work_alphabet"] = m.work_alphabet;
    doc["space_bound"] = {{"c", m.space_bound.c}, {"d", m.space_bound.d}};
    Json ts = Json::array();
    for (const Transition& t : m.transitions) {
        Json j;
        j["from"] = t.from;
        j["in"] = std::string(1, t.in);
        j["read"] = t.read;
        j["to"] = t.to;
        j["write"] = t.write;
        j["din"] = t.din;
        j["dwork"] = t.dwork;
        ts.push_back(std::move(j));
    }
    doc["transitions"] = std::move(ts);
    return doc;
}

TuringMachine machine_from_json(const Json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "", {"name", "states", "start", "accept", "reject", "polarity", "input_alphabet",
                             "work_alphabet", "space_bound", "transitions"});
    TuringMachine m;
    m.name = doc.contains("name") ? as_string(doc["name"], "name") : "machine";
    const Json& states = as_array(field(doc, "", "states"), "states");
    for (std::size_t i = 0; i < states.size(); ++i) m.states.push_back(as_string(states[i], at_index("states", i)));
    m.start = string_field(doc, "", "start");
    m.accept = string_field(doc, "", "accept");
    m.reject = string_field(doc, "", "reject");
    const std::string polarity = string_field(doc, "", "polarity");
    if (polarity == to_string(Acceptance::Existential)) {
        m.polarity = Acceptance::Existential;
    } else if (polarity == to_string(Acceptance::Universal)) {
        m.polarity = Acceptance::Universal;
    } else {
        fail("polarity", "expected \"existential\" or \"universal\"");
    }
    if (doc.contains("input_alphabet")) m.input_alphabet = as_string(doc["input_alphabet"], "input_alphabet");
    const Json& work = as_array(field(doc, "", "work_alphabet"), "work_alphabet");
    for (std::size_t i = 0; i < work.size(); ++i) m.work_alphabet.push_back(as_string(work[i], at_index("work_alphabet", i)));
    const Json& bound = field(doc, "", "space_bound");
    reject_unknown(bound, "space_bound", {"c", "d"});
    m.space_bound.c = as_unsigned(field(bound, "space_bound", "c"), "space_bound.c");
    m.space_bound.d = as_unsigned(field(bound, "space_bound", "d"), "space_bound.d");
    const Json& ts = as_array(field(doc, "", "transitions"), "transitions");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string path = at_index("transitions", i);
        const Json& t = ts[i];
        require_object(t, path);
        reject_unknown(t, path, {"from", "in", "read", "to", "write", "din", "dwork"});
        Transition tr;
        tr.from = string_field(t, path, "from");
        const std::string in = string_field(t, path, "in");
        if (in.size() != 1) fail(join(path, "in"), "expected a single character");
        tr.in = in[0];
        tr.read = string_field(t, path, "read");
        tr.to = string_field(t, path, "to");
        tr.write = string_field(t, path, "write");
        tr.din = static_cast<int>(as_integer(field(t, path, "din"), join(path, "din")));
        tr.dwork = static_cast<int>(as_integer(field(t, path, "dwork"), join(path, "dwork")));
        m.transitions.push_back(std::move(tr));
    }
    try {
        validate_machine(m);
    } catch (const MachineError& e) {
        throw FormatError(std::string("machine: ") + e.what());
    }
    return m;
}

TuringMachine load_machine(const std::filesystem::path& path) {
    try {
        return machine_from_json(read_json_file(path));
    } catch (const FormatError& e) {
        const std::string what = e.what();
        if (what.rfind(path.string(), 0) == 0) throw;
        throw FormatError(path.string() + ": " + what);
    }
}

Json support_to_json(const Support& s) {
    Json doc;
    doc["polarity"] = to_string(s.polarity);
    doc["reachable_inputs"] = s.reachable_inputs;
    doc["forcing_constant"] = s.forcing_constant;
    return doc;
}

CircuitFamily family_for_construction(std::string_view construction, const TuringMachine& machine) {
    if (construction == "nl_to_or") return compile_nl_to_monotone_family(machine, Polarity::Or);
    if (construction == "nl_to_and") return compile_nl_to_monotone_family(machine, Polarity::And);
    if (construction == "tally_to_or") return compile_tally_to_monotone_family(machine, Polarity::Or);
    if (construction == "tally_to_and") return compile_tally_to_monotone_family(machine, Polarity::And);
    if (construction == "semiuniform_or") return semiuniform_family(machine, Polarity::Or);
    if (construction == "semiuniform_and") return semiuniform_family(machine, Polarity::And);
    throw FormatError("construction: unknown construction '" + std::string(construction) + "'");
}

CircuitFamily family_from_descriptor(const Json& doc, const std::filesystem::path& base_dir) {
    const std::string path = "family";
    require_object(doc, path);
    reject_unknown(doc, path, {"construction", "machine_file", "polarity"});
    const std::string construction = string_field(doc, path, "construction");
    const TuringMachine machine = load_machine(base_dir / string_field(doc, path, "machine_file"));
    CircuitFamily family = family_for_construction(construction, machine);
    if (doc.contains("polarity") && family.polarity() != polarity_of(doc["polarity"], join(path, "polarity"))) {
        fail(join(path, "polarity"), "does not match construction " + construction);
    }
    return family;
}

TallyOracle tally_oracle_from_json(const Json& doc, const std::filesystem::path& base_dir) {
    require_object(doc, "oracle");
    if (doc.contains("transitions")) return TallyOracle::from_machine(machine_from_json(doc));
    if (doc.contains("tally_set")) {
        reject_unknown(doc, "oracle", {"tally_set"});
        std::set<std::uint64_t> lengths;
        const Json& arr = as_array(doc["tally_set"], "oracle.tally_set");
        for (std::size_t i = 0; i < arr.size(); ++i) lengths.insert(as_unsigned(arr[i], at_index("oracle.tally_set", i)));
        return TallyOracle::from_set(std::move(lengths));
    }
    if (doc.contains("tally_machine_file")) {
        reject_unknown(doc, "oracle", {"tally_machine_file"});
        TuringMachine m = load_machine(base_dir / as_string(doc["tally_machine_file"], "oracle.tally_machine_file"));
        if (m.input_alphabet != "1") fail("oracle.tally_machine_file", m.name + " is not a tally machine");
        return TallyOracle::from_machine(std::move(m));
    }
    fail("oracle", "expected tally_set, tally_machine_file or a machine document");
}

namespace {

struct ParsedTau {
    QueryTransform tau;
    std::string name;
};

ParsedTau parse_tau(const Json& doc, const std::string& path) {
    require_object(doc, path);
    if (doc.contains("lookup")) {
        reject_unknown(doc, path, {"lookup"});
        auto table = std::make_shared<std::map<std::string, std::vector<std::string>>>();
        const Json& lookup = doc["lookup"];
        require_object(lookup, join(path, "lookup"));
        for (const auto& [word, queries] : lookup.items()) {
            const std::string entry = join(join(path, "lookup"), word);
            std::vector<std::string> qs;
            const Json& arr = as_array(queries, entry);
            for (std::size_t i = 0; i < arr.size(); ++i) qs.push_back(as_string(arr[i], at_index(entry, i)));
            (*table)[word] = std::move(qs);
        }
        return {[table](std::string_view w) {
                    auto it = table->find(std::string(w));
                    if (it == table->end()) throw ReductionError("lookup: no entry for '" + std::string(w) + "'");
                    return it->second;
                },
                "lookup"};
    }
    const std::string builtin = string_field(doc, path, "builtin");
    if (builtin == "tau_prime") {
        reject_unknown(doc, path, {"builtin", "polarity", "inner"});
        const Polarity p = polarity_of(field(doc, path, "polarity"), join(path, "polarity"));
        ParsedTau inner = parse_tau(field(doc, path, "inner"), join(path, "inner"));
        return {[tau = inner.tau, p](std::string_view w) {
                    std::vector<std::string> out;
                    for (std::uint64_t k : tau_prime(tau, w, p)) out.push_back(unary_word(k));
                    return out;
                },
                "tau_prime(" + inner.name + ")"};
    }
    if (builtin == "r_map") {
        reject_unknown(doc, path, {"builtin", "polarity", "inner", "q"});
        const Polarity p = polarity_of(field(doc, path, "polarity"), join(path, "polarity"));
        ParsedTau inner = parse_tau(field(doc, path, "inner"), join(path, "inner"));
        std::uint64_t scale = 1, offset = 0;
        if (doc.contains("q")) {
            const Json& q = doc["q"];
            const std::string qpath = join(path, "q");
            require_object(q, qpath);
            reject_unknown(q, qpath, {"scale", "offset"});
            if (q.contains("scale")) scale = as_unsigned(q["scale"], join(qpath, "scale"));
            if (q.contains("offset")) offset = as_unsigned(q["offset"], join(qpath, "offset"));
        }
        return {[tau = inner.tau, p, scale, offset](std::string_view w) {
                    std::vector<std::uint64_t> counts;
                    for (const std::string& query : tau(w)) {
                        const auto k = unary_length(query);
                        if (!k) throw ReductionError("r_map: query '" + query + "' is not unary");
                        counts.push_back(*k);
                    }
                    return std::vector<std::string>{r_map(counts, p, scale * w.size() + offset)};
                },
                "r(" + inner.name + ")"};
    }
    reject_unknown(doc, path, {"builtin", "params"});
    std::map<std::string, std::int64_t> params;
    if (doc.contains("params")) {
        const Json& ps = doc["params"];
        require_object(ps, join(path, "params"));
        for (const auto& [key, value] : ps.items()) params[key] = as_integer(value, join(join(path, "params"), key));
    }
    try {
        return {builtin_transform(builtin, params), builtin};
    } catch (const ReductionError& e) {
        fail(join(path, "builtin"), e.what());
    }
}

}  // namespace

BoundReduction reduction_from_json(const Json& doc, const std::filesystem::path& base_dir) {
    require_object(doc, "");
    reject_unknown(doc, "", {"kind", "tau", "sigma", "procedure", "oracle"});
    BoundReduction out;
    const std::string kind = string_field(doc, "", "kind");
    const auto k = reduction_kind_from_string(kind);
    if (!k) fail("kind", "unknown reduction kind '" + kind + "' (expected m, dtt, ctt, tt or T)");
    out.spec.kind = *k;
    ParsedTau tau = parse_tau(field(doc, "", "tau"), "tau");
    out.spec.tau = tau.tau;
    out.spec.name = std::string(to_string(*k)) + ":" + tau.name;
    if (*k == ReductionKind::Tt) {
        const std::string table = string_field(doc, "", "sigma");
        if (table.find_first_not_of("01") != std::string::npos) fail("sigma", "expected a 0/1 string");
        out.spec.sigma = [table](std::string_view) { return table; };
    } else if (doc.contains("sigma")) {
        fail("sigma", "only tt reductions take a truth table");
    }
    if (*k == ReductionKind::Turing) {
        try {
            out.spec.turing = builtin_turing_procedure(string_field(doc, "", "procedure"), tau.tau);
        } catch (const ReductionError& e) {
            fail("procedure", e.what());
        }
    } else if (doc.contains("procedure")) {
        fail("procedure", "only T reductions take a procedure");
    }
    const Json& oracle = field(doc, "", "oracle");
    require_object(oracle, "oracle");
    if (oracle.contains("family") || oracle.contains("mf")) {
        reject_unknown(oracle, "oracle", {"family", "mf"});
        if (oracle.size() != 1) fail("oracle", "give either family or mf");
        const bool mf = oracle.contains("mf");
        CircuitFamily family = family_from_descriptor(mf ? oracle["mf"] : oracle["family"], base_dir);
        if (family.mode() != FamilyMode::Uniform) fail("oracle", "family oracles must be uniform");
        if (mf) {
            const TallyOracle t = mf_oracle(family);
            out.oracle = t.membership();
            out.oracle_name = t.name();
        } else {
            out.oracle = family_membership(family);
            out.oracle_name = family.construction() + ":" + family.source();
        }
    } else {
        const TallyOracle t = tally_oracle_from_json(oracle, base_dir);
        out.oracle = t.membership();
        out.oracle_name = t.name();
    }
    return out;
}

Json report_to_json(const VerificationReport& report, bool timing) {
    Json doc;
    doc["construction"] = report.construction;
    doc["max_n"] = report.max_n;
    doc["cases"] = report.cases;
    doc["failure_count"] = report.failure_count;
    doc["passed"] = report.passed();
    Json failures = Json::array();
    for (const CaseFailure& f : report.failures) {
        failures.push_back({{"input", f.input}, {"expected", f.expected}, {"actual", f.actual}, {"detail", f.detail}});
    }
    doc["failures"] = std::move(failures);
    Json metrics = Json::object();
    for (const auto& [key, value] : report.metrics) metrics[key] = value;
    doc["metrics"] = std::move(metrics);
    if (timing) doc["elapsed_ms"] = report.elapsed_ms;
    return doc;
}

Json witness_to_json(const SeparationWitness& w) {
    Json doc;
    doc["kind"] = to_string(w.kind);
    doc["n"] = w.n;
    doc["function"] = w.function;
    doc["table"] = w.table.to_string();
    Json checks = Json::array();
    for (const WitnessCheck& c : w.checks) checks.push_back({{"claim", c.claim}, {"holds", c.holds}});
    doc["checks"] = std::move(checks);
    doc["verified"] = w.verified();
    return doc;
}

}  // namespace monocirc
