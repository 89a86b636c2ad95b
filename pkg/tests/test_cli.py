from __future__ import annotations

import pytest

from radiosim import format_network, format_trace, make_path
from radiosim.cli import (EXIT_OK, EXIT_SCIENCE, EXIT_USAGE, derive_seed,
                          load_network, main)


def run_cli(*argv):
    return main(list(argv))


def test_derive_seed_stable_and_distinct():
    assert derive_seed(1, "traffic") == derive_seed(1, "traffic")
    assert derive_seed(1, "traffic") != derive_seed(1, "topology")
    assert derive_seed(1, "traffic") != derive_seed(2, "traffic")


def test_load_network_generators():
    assert load_network("gen:clique:4", 1).n == 4
    assert load_network("gen:path:6", 1).n == 6
    assert load_network("gen:cycle:5", 1).n == 5
    assert load_network("gen:random:7:0.3", 1).n == 7
    # seeded: same seed, same graph
    assert load_network("gen:random:7:0.3", 5) == load_network("gen:random:7:0.3", 5)


def test_load_network_from_file(tmp_path):
    net = make_path(4)
    p = tmp_path / "net.txt"
    p.write_text(format_network(net))
    assert load_network(str(p), 1) == net


def test_bad_generator_spec_is_usage_error(capsys):
    assert run_cli("gossip-check", "--network", "gen:torus:4") == EXIT_USAGE


# ---------------------------------------------------------------- sls


def test_sls_on_crossed_ring(tmp_path, capsys):
    netfile = tmp_path / "net.txt"
    netfile.write_text("n 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n")
    toursfile = tmp_path / "tours.txt"
    toursfile.write_text("t 1 1 3 2\nt 2 1 1 2\nt 3 1 4 3\nt 4 1 1 4\n")
    code = run_cli("sls", "--network", str(netfile), "--tours", str(toursfile),
                   "--out", str(tmp_path / "out"))
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "chromatic number: 3" in out
    assert "optimal schedule length: 3" in out
    assert "PASS" in out
    assert (tmp_path / "out" / "schedule.txt").exists()


def test_sls_generated_instance():
    assert run_cli("sls", "--network", "gen:clique:4", "--gen-tours", "4",
                   "--seed", "3") == EXIT_OK


def test_sls_empty_instance_is_vacuous(capsys):
    code = run_cli("sls", "--network", "gen:clique:4", "--gen-tours", "0")
    assert code == EXIT_OK
    assert "vacuous" in capsys.readouterr().out


def test_sls_rejects_multilink_tours(tmp_path):
    netfile = tmp_path / "net.txt"
    netfile.write_text("n 3\ne 1 2\ne 2 3\n")
    toursfile = tmp_path / "tours.txt"
    toursfile.write_text("t 1 1 1 2 3\n")
    assert run_cli("sls", "--network", str(netfile),
                   "--tours", str(toursfile)) == EXIT_USAGE


# ---------------------------------------------------------------- instability


def test_instability_round_robin(tmp_path, capsys):
    code = run_cli("instability", "--adv", "1/2:1:3", "--n", "6", "--t", "2",
                   "--intervals", "60", "--out", str(tmp_path))
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "verdict: growing" in out
    assert (tmp_path / "rounds.csv").exists()
    assert (tmp_path / "summary.csv").exists()


def test_instability_ogf_forced_window(capsys):
    code = run_cli("instability", "--adv", "1/2:1:3", "--n", "6", "--t", "2",
                   "--intervals", "40", "--algorithm", "ogf")
    assert code == EXIT_OK
    assert "growing" in capsys.readouterr().out


def test_instability_rejects_balanced_type(capsys):
    assert run_cli("instability", "--adv", "1/8:1:2", "--n", "6",
                   "--t", "2") == EXIT_USAGE


# ---------------------------------------------------------------- ogf


def test_ogf_run_and_reproducible_csv(tmp_path, capsys):
    args = ("ogf", "--network", "gen:path:4", "--adv", "1/8:1:2",
            "--gossip", "tdma", "--seed", "5", "--horizon", "120",
            "--gen-scale", "1/2")
    code = run_cli(*args, "--out", str(tmp_path / "a"))
    assert code == EXIT_OK
    assert "all latencies within 2u = 38" in capsys.readouterr().out
    code = run_cli(*args, "--out", str(tmp_path / "b"))
    assert code == EXIT_OK
    for name in ("rounds.csv", "deliveries.csv", "summary.csv"):
        a = (tmp_path / "a" / name).read_bytes()
        b = (tmp_path / "b" / name).read_bytes()
        assert a == b


def test_ogf_rejects_unbalanced(capsys):
    assert run_cli("ogf", "--network", "gen:path:4",
                   "--adv", "1/2:1:3") == EXIT_USAGE


def test_ogf_loads_trace_file(tmp_path, capsys):
    from fractions import Fraction
    from radiosim import AdversaryType, gen_balanced
    net = make_path(4)
    adv = AdversaryType(Fraction(1, 16), 1, 2)
    trace = gen_balanced(net, adv, 3, 100)
    tracefile = tmp_path / "trace.txt"
    tracefile.write_text(format_trace(adv, trace))
    netfile = tmp_path / "net.txt"
    netfile.write_text(format_network(net))
    code = run_cli("ogf", "--network", str(netfile), "--adv", "1/8:1:2",
                   "--trace", str(tracefile), "--horizon", "120")
    assert code == EXIT_OK


# ---------------------------------------------------------------- verify-trace


def test_verify_trace_accepts_generator_output(tmp_path, capsys):
    from fractions import Fraction
    from radiosim import AdversaryType, gen_balanced
    net = make_path(5)
    adv = AdversaryType(Fraction(1, 8), 1, 2)
    trace = gen_balanced(net, adv, 9, 60)
    netfile = tmp_path / "net.txt"
    netfile.write_text(format_network(net))
    tracefile = tmp_path / "trace.txt"
    tracefile.write_text(format_trace(adv, trace))
    code = run_cli("verify-trace", "--network", str(netfile),
                   "--trace", str(tracefile))
    assert code == EXIT_OK
    assert "ok:" in capsys.readouterr().out


def test_verify_trace_flags_burst(tmp_path, capsys):
    netfile = tmp_path / "net.txt"
    netfile.write_text("n 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\ne 1 3\ne 2 4\n")
    tracefile = tmp_path / "trace.txt"
    # two conflicting injections in one round against budget 1/2 + 1
    tracefile.write_text("adv 1/2 1 1\nt 1 1 1 2\nt 2 1 3 4\n")
    code = run_cli("verify-trace", "--network", str(netfile),
                   "--trace", str(tracefile))
    out = capsys.readouterr().out
    assert code == EXIT_SCIENCE
    assert "violation" in out and "node" in out


def test_verify_trace_flags_stretch(tmp_path, capsys):
    netfile = tmp_path / "net.txt"
    netfile.write_text("n 3\ne 1 2\ne 2 3\n")
    tracefile = tmp_path / "trace.txt"
    tracefile.write_text("adv 1/2 1 1\nt 1 1 1 2 3\n")
    code = run_cli("verify-trace", "--network", str(netfile),
                   "--trace", str(tracefile))
    assert code == EXIT_SCIENCE
    assert "stretch" in capsys.readouterr().out


def test_verify_trace_parse_error(tmp_path):
    tracefile = tmp_path / "trace.txt"
    tracefile.write_text("garbage\n")
    assert run_cli("verify-trace", "--network", "gen:path:3",
                   "--trace", str(tracefile)) == EXIT_USAGE


# ---------------------------------------------------------------- gossip-check


def test_gossip_check_ok(capsys):
    assert run_cli("gossip-check", "--network", "gen:path:5") == EXIT_OK
    assert "complete knowledge: yes" in capsys.readouterr().out
    assert run_cli("gossip-check", "--network", "gen:random:6:0.2",
                   "--seed", "4") == EXIT_OK


def test_missing_network_file_is_usage_error(tmp_path):
    assert run_cli("gossip-check", "--network",
                   str(tmp_path / "absent.txt")) == EXIT_USAGE
