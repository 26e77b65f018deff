import random

from hfgt.ingest import RawLfes, RawMachine, RawMethodxForm
from hfgt.matrices import (
    matricize_refined_tensor,
    matricize_transport_tensor,
    refined_transport_concept,
    stack_system_concept,
    structural_dof,
    transformation_concept,
    transport_concept,
)
from hfgt.metamodel import SystemModel

from sysgen import oracle_concepts, random_system


def test_desk3_transformation_concept(desk3_model):
    triple = transformation_concept(desk3_model)
    assert (triple.j.rows, triple.j.cols) == (1, 1)
    assert triple.j.entries == {(1, 1)}
    assert triple.k.entries == frozenset()
    assert triple.a.entries == {(1, 1)}
    assert triple.a.nnz == 1


def test_all_inactive_transform(desk3_raw):
    desk3_raw.machines[0].methods_form[0].status = "inactive"
    model = SystemModel.build(desk3_raw)
    triple = transformation_concept(model)
    assert triple.k.entries == {(1, 1)}
    assert triple.a.nnz == 0


def test_machine_without_forms_has_empty_column():
    raw = RawLfes(
        name="x",
        machines=[
            RawMachine(name="A", methods_form=[RawMethodxForm(name="f", operand=["o"], output=["o"])]),
            RawMachine(name="B"),
        ],
    )
    triple = transformation_concept(SystemModel.build(raw))
    assert all(col != 2 for _, col in triple.j.entries)


def test_desk3_transport_concept(desk3_model):
    triple, tensors = transport_concept(desk3_model)
    assert (triple.j.rows, triple.j.cols) == (9, 4)
    assert triple.j.entries == {(1, 1), (6, 4), (8, 4)}
    assert triple.a.nnz == 3
    assert tensors.j.dims == (3, 3, 4)
    assert tensors.j.entries == {(1, 1, 1), (3, 2, 4), (2, 3, 4)}


def test_desk3_refined_concept(desk3_model):
    triple, tensors = refined_transport_concept(desk3_model)
    assert (triple.j.rows, triple.j.cols) == (18, 4)
    assert {r for r, _ in triple.j.entries} == {1, 15, 17}
    assert triple.a.nnz == 3
    assert tensors.j.dims == (6, 3, 4)
    assert tensors.j.entries == {(1, 1, 1), (6, 2, 4), (5, 3, 4)}


def test_deactivating_one_port(desk3_raw):
    desk3_raw.transporters[0].methods_port[0].status = "inactive"
    model = SystemModel.build(desk3_raw)
    triple, _ = refined_transport_concept(model)
    assert (15, 4) in triple.k
    assert triple.a.nnz == 2


def test_single_holding_rows_match_transport(desk3_raw):
    # collapse to one holding process so refined rows equal transport rows
    desk3_raw.abstractions.methods_port = desk3_raw.abstractions.methods_port[:1]
    for port in desk3_raw.machines[0].methods_port:
        port.ref = "store water"
    for port in desk3_raw.transporters[0].methods_port:
        port.ref = "store water"
    model = SystemModel.build(desk3_raw)
    transport, _ = transport_concept(model)
    refined, _ = refined_transport_concept(model)
    assert refined.j.entries == transport.j.entries
    assert refined.k.entries == transport.k.entries


def test_tensor_matrix_duality_desk3(desk3_model):
    transport, tensors = transport_concept(desk3_model)
    assert matricize_transport_tensor(tensors.j, desk3_model) == transport.j
    assert matricize_transport_tensor(tensors.k, desk3_model) == transport.k
    assert matricize_transport_tensor(tensors.a, desk3_model) == transport.a
    refined, refined_tensors = refined_transport_concept(desk3_model)
    assert matricize_refined_tensor(refined_tensors.j, desk3_model) == refined.j
    assert matricize_refined_tensor(refined_tensors.k, desk3_model) == refined.k
    assert matricize_refined_tensor(refined_tensors.a, desk3_model) == refined.a


def test_no_transport_methods_empty():
    raw = RawLfes(name="x", machines=[RawMachine(name="A")])
    triple, tensors = transport_concept(SystemModel.build(raw))
    assert triple.j.nnz == 0
    assert tensors.j.nnz == 0


def test_desk3_system_concept(desk3_model):
    transform = transformation_concept(desk3_model)
    refined, _ = refined_transport_concept(desk3_model)
    system = stack_system_concept(desk3_model, transform, refined)
    assert (system.a.rows, system.a.cols) == (19, 4)
    assert system.a.entries == {(1, 1), (2, 1), (16, 4), (18, 4)}
    assert system.a.nnz == 4


def test_empty_system_concept():
    model = SystemModel.build(RawLfes(name="empty"))
    transform = transformation_concept(model)
    refined, _ = refined_transport_concept(model)
    system = stack_system_concept(model, transform, refined)
    assert (system.j.rows, system.j.cols) == (0, 0)


def test_desk3_structural_dof(desk3_model):
    transform = transformation_concept(desk3_model)
    transport, _ = transport_concept(desk3_model)
    refined, _ = refined_transport_concept(desk3_model)
    assert structural_dof(transform, transport, refined) == (1, 3, 3)


def test_all_inactive_dof(desk3_raw):
    for machine in desk3_raw.machines:
        for method in machine.methods_form + machine.methods_port:
            method.status = "inactive"
    for transporter in desk3_raw.transporters:
        for method in transporter.methods_port:
            method.status = "inactive"
    model = SystemModel.build(desk3_raw)
    transform = transformation_concept(model)
    transport, _ = transport_concept(model)
    refined, _ = refined_transport_concept(model)
    assert structural_dof(transform, transport, refined) == (0, 0, 0)


def test_random_systems_match_oracle():
    for seed in range(100):
        raw = random_system(random.Random(1000 + seed))
        model = SystemModel.build(raw)
        expected = oracle_concepts(raw)

        transform = transformation_concept(model)
        transport, transport_tensors = transport_concept(model)
        refined, refined_tensors = refined_transport_concept(model)
        system = stack_system_concept(model, transform, refined)

        assert transform.j.entries == expected["jm"], f"seed {seed}"
        assert transform.k.entries == expected["km"]
        assert transform.a.entries == expected["am"]
        assert transport.j.entries == expected["jh"]
        assert transport.a.entries == expected["ah"]
        assert refined.j.entries == expected["jhref"]
        assert refined.a.entries == expected["ahref"]
        assert system.j.entries == expected["js"]
        assert system.k.entries == expected["ks"]
        assert system.a.entries == expected["as"]

        # concept identity and DOF additivity
        assert system.a.entries == system.j.entries - system.k.entries
        dof_m, dof_h, dof_h_ref = structural_dof(transform, transport, refined)
        assert system.a.nnz == dof_m + dof_h_ref
        assert dof_h_ref <= dof_h * model.catalog.num_holding

        # tensor duality on every random system
        assert matricize_transport_tensor(transport_tensors.j, model) == transport.j
        assert matricize_refined_tensor(refined_tensors.a, model) == refined.a
