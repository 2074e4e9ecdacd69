"""
    signals
    ~~~~~~~

    All of our blinker signals.

    The library never prints; progress is announced through
    these signals & the command line interface connects the
    receivers that turn them into log records.
"""

import blinker


"""
Sent after a conditional mean embedding fit. The sender is
the InputSubset bitmask, kwargs carry the CmeModel & the
jitter the factorization needed.
"""

# pylint: disable=invalid-name
post_fit = blinker.signal('post_fit')


"""
Sent after a single index estimate. The sender is the
estimator tag, kwargs carry the subset & the IndexEstimate.
"""

post_estimate = blinker.signal('post_estimate')


"""
Signals for hyperparameter tuning & every cross-validation
loss evaluated along the way.
"""

post_tune = blinker.signal('post_tune')

cv_evaluated = blinker.signal('cv_evaluated')


"""
Signals for the analysis driver & the report emitters
"""

replicate_started = blinker.signal('replicate_started')
replicate_finished = blinker.signal('replicate_finished')

report_emitted = blinker.signal('report_emitted')
