from src.components.report_view import RunReport
from src.services.worked_examples import WorkedExampleService


def test_replay_all_passes():
    service = WorkedExampleService()
    report = service.replay_all(RunReport(command=['examples']))
    assert report.passed, [c.name for c in report.checks if not c.passed]
    assert set(report.tables) == {'quartic_forest', 'sign_stabilizers'}
    assert service.get_service_status()['replayed'] == 1


def test_sign_rows():
    report = WorkedExampleService().replay_all(RunReport(command=['examples']))
    rows = report.to_dict()['tables']['sign_stabilizers']
    assert [(r['signature'], r['aut_order']) for r in rows] == [('a,b,b,-a;b', 4), ('a,a,-a,-a;b', 8)]
