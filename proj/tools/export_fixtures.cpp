// Writes the fixture machines, sample circuits and reduction descriptors under
// a data directory (default ./data).

#include <filesystem>
#include <iostream>

#include "monocirc/fixtures.hpp"
#include "monocirc/json_io.hpp"

namespace fs = std::filesystem;
using namespace monocirc;

namespace {

Json tau(std::string_view builtin) { return Json{{"builtin", builtin}}; }

Json family(std::string_view construction, std::string_view machine) {
    return Json{{"construction", construction}, {"machine_file", "../machines/" + std::string(machine) + ".json"}};
}

void write(const fs::path& path, const Json& doc) {
    write_json_file(path, doc);
    std::cout << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path("data");
    for (const char* dir : {"machines", "circuits", "reductions"}) fs::create_directories(root / dir);

    for (const TuringMachine& m : fixtures::all_machines()) write(root / "machines" / (m.name + ".json"), machine_to_json(m));
    for (TuringMachine m : {fixtures::tally_even(), fixtures::mod3_length(), fixtures::parity()}) {
        m = with_polarity(std::move(m), Acceptance::Universal);
        m.name += "_universal";
        write(root / "machines" / (m.name + ".json"), machine_to_json(m));
    }

    {
        CircuitBuilder b;
        const GateId x0 = b.add_input(0);
        const GateId zero = b.add_const(false);
        write(root / "circuits" / "or_input0_const0.json",
              circuit_to_json(std::move(b).build(1, b.add_gate(GateKind::Or, {x0, zero}))));
    }
    {
        CircuitBuilder b;
        const GateId x0 = b.add_input(0), x1 = b.add_input(1);
        const GateId n1 = b.add_gate(GateKind::Not, {x1});
        write(root / "circuits" / "or_input0_not_input1.json",
              circuit_to_json(std::move(b).build(2, b.add_gate(GateKind::Or, {x0, n1}))));
    }
    {
        CircuitBuilder b;
        std::vector<GateId> x;
        for (std::size_t j = 0; j < 3; ++j) x.push_back(b.add_input(j));
        write(root / "circuits" / "tally_gate_3.json",
              circuit_to_json(std::move(b).build(3, b.add_gate(GateKind::TallyOracle, x))));
    }
    write(root / "circuits" / "tally_set_1.json", Json{{"tally_set", {1}}});
    write(root / "circuits" / "tally_even_oracle.json", Json{{"tally_machine_file", "../machines/tally_even.json"}});

    const fs::path red = root / "reductions";
    write(red / "identity_m_tally_to_or_even.json",
          Json{{"kind", "m"}, {"tau", tau("identity")}, {"oracle", {{"family", family("tally_to_or", "tally_even")}}}});
    write(red / "prefixes_dtt_tally_to_or_even.json",
          Json{{"kind", "dtt"}, {"tau", tau("prefixes")}, {"oracle", {{"family", family("tally_to_or", "tally_even")}}}});
    write(red / "tau_prime_dtt_mf_tally_to_or_even.json",
          Json{{"kind", "dtt"},
               {"tau", {{"builtin", "tau_prime"}, {"polarity", "or"}, {"inner", tau("prefixes")}}},
               {"oracle", {{"mf", family("tally_to_or", "tally_even")}}}});
    write(red / "one_positions_dtt_tally_even.json",
          Json{{"kind", "dtt"},
               {"tau", tau("one_positions")},
               {"oracle", {{"tally_machine_file", "../machines/tally_even.json"}}}});
    write(red / "r_map_m_tally_to_or_even.json",
          Json{{"kind", "m"},
               {"tau", {{"builtin", "r_map"}, {"polarity", "or"}, {"inner", tau("one_positions")}}},
               {"oracle", {{"family", family("tally_to_or", "tally_even")}}}});
    write(red / "zero_positions_ctt_tally_prime_universal.json",
          Json{{"kind", "ctt"},
               {"tau", tau("zero_positions")},
               {"oracle", {{"tally_machine_file", "../machines/tally_prime_universal.json"}}}});
    write(red / "r_map_m_tally_to_and_prime_universal.json",
          Json{{"kind", "m"},
               {"tau", {{"builtin", "r_map"}, {"polarity", "and"}, {"inner", tau("zero_positions")}}},
               {"oracle", {{"family", family("tally_to_and", "tally_prime_universal")}}}});
    write(red / "halves_xor_tt_tally_set.json",
          Json{{"kind", "tt"}, {"tau", tau("halves")}, {"sigma", "0110"}, {"oracle", {{"tally_set", {1, 2}}}}});
    write(red / "first_member_parity_T_tally_prime.json",
          Json{{"kind", "T"},
               {"tau", tau("one_positions")},
               {"procedure", "first_member_parity"},
               {"oracle", {{"tally_machine_file", "../machines/tally_prime.json"}}}});
    return 0;
}
