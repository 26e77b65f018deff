"""Acceptance suite: one test per release criterion, printing a PASS line."""

import json
import random
import time

import numpy as np

from hfgt.cli import main
from hfgt.ingest import parse_event_list, parse_lfes
from hfgt.matrices import (
    compute_bundle,
    matricize_refined_tensor,
    matricize_transport_tensor,
)
from hfgt.metamodel import SystemModel
from hfgt.petri import build_petri_network, map_events, simulate_token_flow

from conftest import DESK3_XML, TWO_OPERAND_XML
from sysgen import oracle_adjacency, random_system
from test_petri import random_transport_events


def _fixture_models():
    for path in (DESK3_XML, TWO_OPERAND_XML):
        yield SystemModel.build(parse_lfes(path.read_bytes()))


def test_desk3_end_to_end():
    started = time.perf_counter()
    model = SystemModel.build(parse_lfes(DESK3_XML.read_bytes()))
    bundle = compute_bundle(model)
    elapsed = time.perf_counter() - started

    assert model.resources.num_machines == 1
    assert model.resources.num_buffers == 3
    assert model.resources.num_resources == 4
    assert model.catalog.num_transform == 1
    assert model.catalog.num_transport == 9
    assert model.catalog.num_holding == 2
    assert model.catalog.num_refined == 18
    assert bundle.dof_m == 1
    assert bundle.dof_h == 3
    assert bundle.dof_h_ref == 3
    assert bundle.system.a.nnz == 4
    assert elapsed < 1.0
    print(f"\nPASS: DESK-3 end-to-end exact counts (runtime {elapsed * 1000:.1f} ms)")


def test_concept_identity_suite():
    failures = 0
    for seed in range(200):
        raw = random_system(random.Random(seed), max_resources=5, max_operands=3)
        bundle = compute_bundle(SystemModel.build(raw))
        for triple in (bundle.transform, bundle.transport, bundle.refined, bundle.system):
            if triple.a.entries != triple.j.entries - triple.k.entries:
                failures += 1
        if bundle.system.a.nnz != bundle.dof_m + bundle.dof_h_ref:
            failures += 1
    assert failures == 0
    print("\nPASS: concept identity A = J AND NOT K and sigma(AS) = DOFM + DOFHref on 200 random systems")


def test_tensor_matrix_duality():
    models = list(_fixture_models())
    models += [
        SystemModel.build(random_system(random.Random(500 + seed))) for seed in range(50)
    ]
    for model in models:
        bundle = compute_bundle(model)
        assert matricize_transport_tensor(bundle.transport_tensors.j, model) == bundle.transport.j
        assert matricize_transport_tensor(bundle.transport_tensors.k, model) == bundle.transport.k
        assert matricize_transport_tensor(bundle.transport_tensors.a, model) == bundle.transport.a
        assert matricize_refined_tensor(bundle.refined_tensors.j, model) == bundle.refined.j
        assert matricize_refined_tensor(bundle.refined_tensors.k, model) == bundle.refined.k
        assert matricize_refined_tensor(bundle.refined_tensors.a, model) == bundle.refined.a
    print(f"\nPASS: tensor/matrix duality bit-exact on {len(models)} fixtures")


def test_adjacency_oracle_equivalence():
    checked = 0
    for seed in range(150):
        # systems capped at 4 resources always satisfy the size bound;
        # larger draws participate whenever they fall under it
        raw = random_system(random.Random(4000 + seed), max_resources=4 if seed < 100 else 5)
        model = SystemModel.build(raw)
        if model.catalog.num_system_processes * model.resources.num_resources > 200:
            continue
        bundle = compute_bundle(model)
        assert bundle.adjacency.ar.entries == oracle_adjacency(raw, model.operands)
        partition = (
            bundle.adjacency.dof_r1
            + bundle.adjacency.dof_r2
            + bundle.adjacency.dof_r3
            + bundle.adjacency.dof_r4
        )
        assert partition == bundle.adjacency.ar.nnz
        checked += 1
    assert checked >= 100
    print(f"\nPASS: AR equals brute-force oracle and DOFR1..4 partitions on {checked} systems")


def test_service_suite():
    models = list(_fixture_models())
    models += [
        SystemModel.build(random_system(random.Random(6000 + seed), with_services=True))
        for seed in range(50)
    ]
    services_checked = 0
    for model in models:
        bundle = compute_bundle(model)
        realized = set(bundle.realized)
        for service in bundle.services:
            recomputed = (service.mneg.to_dense().T.astype(int) @ service.mpos.to_dense().astype(int)) > 0
            assert np.array_equal(service.dual_adjacency.to_dense(), recomputed)
            raw_cols = {psi for _, psi in service.raw_lambda.entries}
            assert raw_cols <= realized
            projected = [psi for _, psi in service.lam.entries]
            assert all(1 <= p <= len(bundle.realized) for p in projected)
            services_checked += 1
    assert services_checked > 0
    print(f"\nPASS: service dual adjacency and Lambda projection on {services_checked} services")


def test_replay_conservation(tmp_path):
    model = SystemModel.build(parse_lfes(DESK3_XML.read_bytes()))
    bundle = compute_bundle(model)
    total = sum(p.init_tokens for p in build_petri_network(model).places)
    for seed in range(50):
        rng = random.Random(9000 + seed)
        text = "idxToken,tStart,idxResource,idxProcess\n" + random_transport_events(
            model, rng, rng.randint(1, 10)
        )
        events = parse_event_list(text)
        net = simulate_token_flow(build_petri_network(model), map_events(events, model, bundle))
        sums = net.qb.sum(axis=0) + net.qt.sum(axis=0)
        assert (sums == total).all(), f"seed {seed}"

    infeasible = tmp_path / "infeasible.csv"
    infeasible.write_text("idxToken,tStart,idxResource,idxProcess\n1,0,4,16\n")
    code = main(["replay", str(DESK3_XML), "--events", str(infeasible), "-o", str(tmp_path)])
    assert code == 3
    print("\nPASS: token conservation on 50 random transport lists; infeasible list exits 3")


def test_build_determinism(tmp_path):
    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    assert main(["build", str(DESK3_XML), "-o", str(out1)]) == 0
    assert main(["build", str(DESK3_XML), "-o", str(out2)]) == 0
    names1 = sorted(p.name for p in out1.iterdir())
    names2 = sorted(p.name for p in out2.iterdir())
    assert names1 == names2
    for name in names1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name
    manifest = json.loads((out1 / "manifest.json").read_text())
    assert len(manifest["artifacts"]) == len(names1) - 1  # every file except the manifest itself
    print(f"\nPASS: two builds byte-identical across {len(names1)} files")
