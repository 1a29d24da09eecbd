"""adjcomp: consistency testing of embedding models on adjective-noun
composition, with a set-world oracle for the corresponding set relations."""

__version__ = "0.1.0"

from .lexicon import (  # noqa: F401
    AdjectiveEntry,
    AdjectiveType,
    Lexicon,
    adjectives_of_type,
    count_by_type,
    default_lexicon,
    load_lexicon,
    parse_lexicon,
    serialize_lexicon,
)
from .phrasegen import (  # noqa: F401
    PairQuadruple,
    Phrase,
    generate_pair_quadruples,
    generate_phrases,
    phrase_texts_needed,
)
from .geometry import cosine_distance, l2_normalize, mean_pool  # noqa: F401
from .providers import (  # noqa: F401
    CachingProvider,
    EmbeddingStore,
    RemoteProvider,
    ToyEmbedder,
    embed_into_store,
    load_store,
    save_store,
)
from .relations import (  # noqa: F401
    ConsistencyCell,
    RelationKind,
    RelationOutcome,
    aggregate,
    eval_intersectivity,
    eval_intersectivity_batch,
    eval_nonsubsectivity,
    eval_nonsubsectivity_batch,
    eval_pair_intersectivity,
    eval_pair_intersectivity_batch,
)
from .setworld import (  # noqa: F401
    DenotationUniverse,
    SetRelationReport,
    check_eq1,
    check_eq2,
    check_ni,
    compose,
    jaccard_distance,
    run_simulation,
)
from .report import (  # noqa: F401
    ResultsBundle,
    TableKind,
    compare_against_reference,
    load_reference_table,
    parse_table,
    render_table,
)
