import pytest

from semitoric import rootdata
from semitoric.errors import NotCartan, NotFiniteType, TooManyWords

from conftest import weyl_dim


def test_presets_and_counts():
    a2 = rootdata.validate_cartan([[2, -1], [-1, 2]])
    assert a2.d == (1, 1) and a2.num_pos_roots == 3
    b2 = rootdata.validate_cartan([[2, -1], [-2, 2]])
    assert b2.num_pos_roots == 4
    assert rootdata.validate_cartan("G2").num_pos_roots == 6
    assert rootdata.validate_cartan("A3").num_pos_roots == 6


def test_symmetrizer_condition():
    for name in ("A2", "B2", "G2", "A3"):
        c = rootdata.validate_cartan(name)
        assert all(c.d[i] * c.a[i][j] == c.d[j] * c.a[j][i] for i in range(c.n) for j in range(c.n))
        assert min(c.d) == 1


@pytest.mark.parametrize("bad", [
    [[2, 1], [-1, 2]],
    [[1, -1], [-1, 2]],
    [[2, 0], [-1, 2]],
    [[2, -1, 0], [-1, 2]],
])
def test_not_cartan(bad):
    with pytest.raises(NotCartan):
        rootdata.validate_cartan(bad)


def test_affine_rejected():
    with pytest.raises(NotFiniteType):
        rootdata.validate_cartan([[2, -2], [-2, 2]])


@pytest.mark.parametrize("name,length,word", [
    ("A2", 3, (1, 2, 1)),
    ("B2", 4, (1, 2, 1, 2)),
    ("A3", 6, (1, 2, 1, 3, 2, 1)),
])
def test_longest_element(name, length, word):
    c = rootdata.validate_cartan(name)
    w0, rw = rootdata.longest_element(c)
    assert w0.length == length
    assert tuple(rw.letters) == word


def test_star():
    assert rootdata.star_involution(rootdata.validate_cartan("A2")) == {1: 2, 2: 1}
    assert rootdata.star_involution(rootdata.validate_cartan("B2")) == {1: 1, 2: 2}
    assert rootdata.star_involution(rootdata.validate_cartan("A1")) == {1: 1}
    a3 = rootdata.validate_cartan("A3")
    s = rootdata.star_involution(a3)
    assert all(s[s[i]] == i for i in s)
    word = (1, 2, 1, 3, 2, 1)
    assert rootdata.star_word(a3, rootdata.star_word(a3, word)) == word


def test_reduced_words_graph():
    a2 = rootdata.validate_cartan("A2")
    g = rootdata.all_reduced_words(rootdata.longest_element(a2)[0])
    assert set(g.words) == {(1, 2, 1), (2, 1, 2)}
    assert len(g.edges) == 1
    b2 = rootdata.validate_cartan("B2")
    assert set(rootdata.all_reduced_words(rootdata.longest_element(b2)[0]).words) == {(1, 2, 1, 2), (2, 1, 2, 1)}
    assert rootdata.all_reduced_words(a2.identity).words == ((),)


def test_a3_word_graph_connected():
    a3 = rootdata.validate_cartan("A3")
    g = rootdata.w0_word_graph(a3)
    assert len(g.words) == 16
    assert g.is_connected()


def test_guard():
    a3 = rootdata.validate_cartan("A3")
    with pytest.raises(TooManyWords):
        rootdata.all_reduced_words(rootdata.longest_element(a3)[0], guard=5)


def test_extend_adapted():
    a2 = rootdata.validate_cartan("A2")
    W = lambda *w: rootdata.WeylElement.from_word(a2, w)
    assert tuple(rootdata.extend_adapted(a2, W(1)).letters) == (1, 2, 1)
    assert tuple(rootdata.extend_adapted(a2, W(2, 1)).letters) == (2, 1, 2)
    w0 = rootdata.longest_element(a2)[0]
    word = rootdata.extend_adapted(a2, w0).letters
    assert rootdata.WeylElement.from_word(a2, word) == w0


def test_extend_adapted_all_of_a3():
    a3 = rootdata.validate_cartan("A3")
    for w in rootdata.all_elements(a3):
        word = rootdata.extend_adapted(a3, w).letters
        assert rootdata.WeylElement.from_word(a3, word[:w.length]) == w
        assert len(word) == 6


def test_root_sequence():
    a2 = rootdata.validate_cartan("A2")
    rs = rootdata.positive_root_sequence(a2, (1, 2, 1))
    assert [tuple(b) for b in rs.beta] == [(1, 0), (1, 1), (0, 1)]
    assert tuple(rs.l_prime((1, 1))) == (1, 2, 1)
    assert all(rs.pairing[k][k] == 2 for k in range(3))


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_root_sequence_is_bijection(name):
    c = rootdata.validate_cartan(name)
    for word in rootdata.w0_word_graph(c).words[:6]:
        rs = rootdata.positive_root_sequence(c, word)
        assert tuple(rs.beta[0]) == tuple(int(j == word[0] - 1) for j in range(c.n))
        assert sorted(map(tuple, rs.beta)) == sorted(map(tuple, c.positive_roots))


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_length_changes_by_one(name):
    c = rootdata.validate_cartan(name)
    elems = rootdata.all_elements(c)
    assert len({e.length for e in elems}) == c.num_pos_roots + 1
    for w in elems:
        for i in range(1, c.n + 1):
            assert abs(w.right_multiply(i).length - w.length) == 1


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("B2", (1, 1)), ("A3", (1, 0, 2)), ("G2", (1, 1))])
def test_weyl_dimension(name, lam):
    c = rootdata.validate_cartan(name)
    assert rootdata.weyl_dimension(c, lam) == weyl_dim(c, lam)
