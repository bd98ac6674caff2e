"""
Worked Example Service for the Equivariant Operad Workbench
Replays the standard small examples (a quartic orbit forest, sign-group stabilizers and a
three-colored forest) and asserts the facts known about them.
"""

import logging
from typing import Any, Dict, List, Tuple

from ..components.report_view import RunReport
from ..core.colors import ColorSet, Signature, signature_automorphisms, stabilizes
from ..core.families import enumerate_graph_subgroups
from ..core.groups import named_group
from ..core.trees import ColoredTree, leaf, orbit_corolla_forest, vertex
from ..utils.config import EXAMPLE_CONFIG
from ..utils.helpers import show_success

logger = logging.getLogger(__name__)


def example_colors(key: str) -> ColorSet:
    """The color G-set of a configured example"""
    config = EXAMPLE_CONFIG[key]
    group = named_group(config.get('group', 'trivial'))
    names = config['colors']
    action = config.get('action')
    if action is not None:
        index = {name: i for i, name in enumerate(names)}
        action = [[index[name] for name in row] for row in action]
    return ColorSet(group, names, action)


def forest_trees(colors: ColorSet) -> Tuple[ColoredTree, ColoredTree]:
    """The two components of the three-colored forest"""
    a, b, c = (colors.index(name) for name in ('a', 'b', 'c'))
    tree_t = vertex(a, [vertex(a, [leaf(b), vertex(a, [])]), vertex(b, [leaf(c)])])
    tree_s = vertex(a, [vertex(b, [vertex(c, [])])])
    return ColoredTree(tree_t, colors), ColoredTree(tree_s, colors)

# ==================== WORKED EXAMPLE SERVICE ====================

class WorkedExampleService:
    """Replays each worked example into a RunReport"""

    def __init__(self):
        self.replayed = 0

    def replay_all(self, report: RunReport) -> RunReport:
        # 1. Orbit forest under the quartic roots of unity
        self._perform_quartic_replay(report)

        # 2. Stabilizing graph subgroups under the sign group
        self._perform_sign_replay(report)

        # 3. Leaf-root and vertex corollas of a colored forest
        self._perform_forest_replay(report)

        self.replayed += 1
        if report.passed:
            report.add_message(show_success('examples_replayed'))
        return report

    def _perform_quartic_replay(self, report: RunReport) -> Dict[str, Any]:
        colors = example_colors('quartic')
        sig = colors.signature(EXAMPLE_CONFIG['quartic']['signature'])
        forest = orbit_corolla_forest(colors, sig)
        report.add_table('quartic_forest', [
            {'component': g, 'group_element': colors.group.label(g), 'corolla': tree.leaf_root().key(colors)}
            for g, tree in enumerate(forest.components)
        ], columns=['component', 'group_element', 'corolla'])
        pairs = forest.isomorphic_pairs()
        report.add_check('quartic forest components', len(forest) == 4, f"{len(forest)} components")
        report.add_check('quartic isomorphic pairs', pairs == [(0, 2), (1, 3)], f"pairs {pairs}")
        return {'components': len(forest), 'pairs': pairs}

    def _perform_sign_replay(self, report: RunReport) -> List[Dict[str, Any]]:
        colors = example_colors('sign')
        rows = []
        for text in EXAMPLE_CONFIG['sign']['signatures']:
            sig = colors.signature(text)
            graphs = [s for s in enumerate_graph_subgroups(colors.group, sig.arity)
                      if not s.is_trivial() and stabilizes(colors, s, sig)]
            rows.append({'signature': text, 'aut_order': signature_automorphisms(colors, sig).order,
                         'nontrivial_graph_stabilizers': len(graphs)})
            report.add_check(f"graph stabilizers of ({text})", len(graphs) == 2, f"{len(graphs)} nontrivial")
        report.add_table('sign_stabilizers', rows, columns=['signature', 'aut_order', 'nontrivial_graph_stabilizers'])
        return rows

    def _perform_forest_replay(self, report: RunReport) -> Dict[str, str]:
        colors = example_colors('forest')
        tree_t, tree_s = forest_trees(colors)
        lr_t, lr_s = tree_t.leaf_root().key(colors), tree_s.leaf_root().key(colors)
        report.add_check('lr(T)', lr_t == 'b,c;a', lr_t)
        report.add_check('lr(S)', lr_s == ';a', lr_s)

        expected = {'T': sorted(['a,b;a', 'b,a;a', ';a', 'c;b']), 'S': sorted(['b;a', 'c;b', ';c'])}
        for name, tree in (('T', tree_t), ('S', tree_s)):
            corollas = sorted(s.key(colors) for s in tree.vertex_corollas())
            report.add_check(f"vertex corollas of {name}", corollas == expected[name], ' '.join(corollas))

        c = colors.index('c')
        stick = ColoredTree.stick(c, colors).leaf_root()
        report.add_check('lr(stick)', stick == Signature((c,), c), stick.key(colors))
        return {'T': lr_t, 'S': lr_s}

    def get_service_status(self) -> Dict[str, Any]:
        """Get worked example service status"""
        return {
            "worked_example_service_available": True,
            "examples": sorted(EXAMPLE_CONFIG),
            "replayed": self.replayed,
        }

# ==================== GLOBAL INSTANCE ====================

# Global instance for easy access
worked_example_service = WorkedExampleService()
