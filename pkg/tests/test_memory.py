import pytest

from polyws.memory import (BudgetedRun, BudgetFault, CollectingSink, Words, WordDeque,
                           WorkspaceLedger)


def test_charge_release_peak():
    run = BudgetedRun(s=8)
    run.charge(10)
    run.release(10)
    assert run.ledger.current_words == 0
    assert run.ledger.peak_words == 10


def test_peak_accumulates():
    run = BudgetedRun(s=8)
    run.charge(5)
    run.charge(7)
    assert run.ledger.peak_words == 12


def test_hard_cap_fault():
    run = BudgetedRun(s=8, hard_cap=8)
    with pytest.raises(BudgetFault):
        run.charge(9)


def test_release_more_than_charged():
    run = BudgetedRun(s=8)
    run.charge(3)
    with pytest.raises(ValueError):
        run.release(4)


def test_alloc_context():
    run = BudgetedRun(s=8)
    with run.alloc(6):
        assert run.ledger.current_words == 6
    assert run.ledger.current_words == 0
    assert run.ledger.peak_words == 6


def test_words_container_accounting():
    run = BudgetedRun(s=8)
    w = Words(run, cost=2)
    w.append("a")
    w.append("b")
    assert run.ledger.current_words == 4
    w.pop()
    assert run.ledger.current_words == 2
    w.clear()
    assert run.ledger.current_words == 0
    assert run.ledger.peak_words == 4


def test_word_deque_both_ends():
    run = BudgetedRun(s=8)
    d = WordDeque(run)
    d.append(1)
    d.appendleft(0)
    assert list(d) == [0, 1]
    assert d.popleft() == 0
    assert d.pop() == 1
    assert run.ledger.current_words == 0
    assert run.ledger.peak_words == 2


def test_sink_counts_writes():
    run = BudgetedRun(s=4)
    sink = CollectingSink(run)
    sink.emit("V 0 1")
    sink.emit("V 1 2")
    assert run.ledger.output_writes == 2
    assert sink.records == ["V 0 1", "V 1 2"]


def test_read_counting():
    run = BudgetedRun(s=4)
    run.read()
    run.read(10)
    assert run.ledger.input_reads == 11
