"""Behavioral forma mentis networks toolkit.

Thin wrapper around the C++ extension module; see the package README for
the full CLI pipeline.
"""

from ._bfmn import (  # noqa: F401
    BfmnError,
    Wordlist,
    analyze_frame,
    chi2_sf_df1,
    clean_token,
    kde_density,
    kruskal_wallis,
    label_corpus_file,
    label_scores,
    parse_association_reply,
    pearson_skewness,
    quadrant,
    render_association_prompt,
    render_cue_rating_prompt,
    render_star_svg_file,
    spell_correct,
    stem,
)

__all__ = [
    "BfmnError",
    "Wordlist",
    "analyze_frame",
    "chi2_sf_df1",
    "clean_token",
    "kde_density",
    "kruskal_wallis",
    "label_corpus_file",
    "label_scores",
    "parse_association_reply",
    "pearson_skewness",
    "quadrant",
    "render_association_prompt",
    "render_cue_rating_prompt",
    "render_star_svg_file",
    "spell_correct",
    "stem",
]

__version__ = "0.1.0"
