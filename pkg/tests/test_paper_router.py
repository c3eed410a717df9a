import pytest

UNSATISFIABLE = b"p cnf 2 4\n1 1 2 0\n1 1 -2 0\n-1 -1 2 0\n-1 -1 -2 0\n"

def test_paper_formula_endpoint(client):
    """
    Test that a named formula is returned as core text together with its signature.
    """
    response = client.get("/paper/bounded_predecessors")
    assert response.status_code == 200
    data = response.json()
    assert data["name"] == "bounded_predecessors"
    assert data["signature"] == "leq/2"
    assert data["formula"].startswith("forall z. [x][y](")

def test_paper_formula_signature_lists_constants(client):
    assert client.get("/paper/phi_ab").json()["signature"] == "; a/0, b/0"

def test_paper_formula_unknown_name(client):
    response = client.get("/paper/psi")
    assert response.status_code == 404

def test_reduce3sat_endpoint(client):
    """
    Test that an unsatisfiable instance yields a supported team.
    """
    response = client.post("/paper/reduce3sat", files={"cnf_file": ("unsat.cnf", UNSATISFIABLE, "text/plain")})
    assert response.status_code == 200
    data = response.json()
    assert data["source"] == "unsat.cnf"
    assert data["check"]["supports"] is True
    assert data["check"]["satisfiable"] is False
    assert data["check"]["agree"] is True

def test_reduce3sat_endpoint_extracts_assignment(client):
    """
    Test that a satisfiable instance yields the assignment read off the least falsifying sub-team.
    """
    response = client.post(
        "/paper/reduce3sat",
        files={"cnf_file": ("one.cnf", b"p cnf 3 1\n1 -2 3 0\n", "text/plain")},
        data={"fast": "false"},
    )
    assert response.status_code == 200
    check = response.json()["check"]
    assert check["supports"] is False
    assert check["agree"] is True
    assert check["assignment"] == {"0": True}
    assert check["assignment_satisfies"] is True

@pytest.mark.parametrize("content", [
    b"p cnf 2 1\n1 2 0\n",
    b"1 2 3 0\n",
    b"\xff\xfe\x00",
])
def test_reduce3sat_endpoint_rejects_bad_input(client, content):
    response = client.post("/paper/reduce3sat", files={"cnf_file": ("bad.cnf", content, "text/plain")})
    assert response.status_code == 400
