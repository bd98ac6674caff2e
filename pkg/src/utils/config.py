"""
Configuration module for the Equivariant Operad Workbench
Contains engine bounds, CLI defaults, logging setup values and message templates.
"""

import os
from dotenv import load_dotenv

# ==================== ENVIRONMENT & BASIC SETUP ====================

# Load environment variables
load_dotenv()

# ==================== ENGINE CONFIGURATION ====================

ENGINE_CONFIG = {
    'default_bound': int(os.getenv('OPERAD_DEFAULT_BOUND', '4')),
    'default_max_arity': int(os.getenv('OPERAD_DEFAULT_MAX_ARITY', '4')),
    'max_group_order': int(os.getenv('OPERAD_MAX_GROUP_ORDER', '48')),
    # law checks with more instances than this are sampled
    'exhaustive_limit': int(os.getenv('OPERAD_EXHAUSTIVE_LIMIT', '200000')),
    'hom_search_limit': int(os.getenv('OPERAD_HOM_SEARCH_LIMIT', '100000')),
    'default_tree_bound': 3,
}

# ==================== CLI CONFIGURATION ====================

CLI_CONFIG = {
    'prog': 'operad-workbench',
    'default_format': os.getenv('OPERAD_REPORT_FORMAT', 'text'),
    'formats': ['text', 'json'],
    'default_seed': int(os.getenv('OPERAD_SEED', '0')),
    'default_arity_range': os.getenv('OPERAD_ARITY_RANGE', '0..3'),
    'show_timing': os.getenv('OPERAD_SHOW_TIMING', 'false').lower() == 'true',
    'json_indent': 2,
}

EXIT_CODES = {
    'pass': 0,
    'check_failed': 1,
    'input_error': 2,
}

# ==================== LOGGING CONFIGURATION ====================

LOGGING_CONFIG = {
    'level': os.getenv('OPERAD_LOG_LEVEL', 'WARNING'),
    'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s',
    'datefmt': '%H:%M:%S',
}

# ==================== WORKED EXAMPLES ====================

EXAMPLE_CONFIG = {
    # quartic roots of unity acting on six colors
    'quartic': {
        'group': 'Z4',
        'colors': ['a', 'ia', '-a', '-ia', 'b', 'ib'],
        # row g lists g acting on the colors; -b is b
        'action': [
            ['a', 'ia', '-a', '-ia', 'b', 'ib'],
            ['ia', '-a', '-ia', 'a', 'ib', 'b'],
            ['-a', '-ia', 'a', 'ia', 'b', 'ib'],
            ['-ia', 'a', 'ia', '-a', 'ib', 'b'],
        ],
        'signature': 'a,ib,ib,-a;b',
    },
    # sign group acting on three colors
    'sign': {
        'group': 'Z2',
        'colors': ['a', '-a', 'b'],
        'action': [['a', '-a', 'b'], ['-a', 'a', 'b']],
        'signatures': ['a,b,b,-a;b', 'a,a,-a,-a;b'],
    },
    'forest': {
        'colors': ['a', 'b', 'c'],
    },
}

# ==================== ERROR MESSAGES ====================

ERROR_MESSAGES = {
    'invalid_group': '❌ Invalid group table',
    'not_homomorphism': '❌ Map is not a group homomorphism',
    'invalid_groupoid': '❌ Groupoid axioms violated',
    'invalid_action': '❌ Not a group action',
    'signature_mismatch': '❌ Signature arity mismatch',
    'tree_error': '❌ Invalid tree',
    'unbounded_request': '❌ Unbounded enumeration requested without reducedness',
    'arity_out_of_range': '❌ Arity outside the declared range',
    'not_stabilizer': '❌ Subgroup does not stabilize the signature',
    'not_equivariant': '❌ Color map is not equivariant',
    'not_injective': '❌ Color map is not injective',
    'truncation': '❌ Composite lies outside the truncation',
    'bound_exceeded': '❌ Vertex bound exceeded',
    'search_limit': '❌ Map search stopped at its limit, count is incomplete',
    'input_error': '❌ Could not read input',
    'check_failed': '❌ Check failed',
    'not_stabilized': '❌ Filtration did not stabilize within bound',
}

# ==================== SUCCESS MESSAGES ====================

SUCCESS_MESSAGES = {
    'check_passed': '✅ Check passed',
    'enumeration_done': '✅ Enumeration finished',
    'stage_computed': '✅ Filtration stage computed',
    'stabilized': '✅ Filtration stabilized',
    'oracle_match': '✅ Filtration agrees with the extension-tree oracle',
    'examples_replayed': '✅ Worked examples replayed',
}
