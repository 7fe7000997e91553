# # When do loops stop helping?
#
# Heavier loops slow the walker down.  Past l = 3 + 2 sqrt(2) the peak success
# falls below the loopless one half.

# %%
from wqwalk.search import LOOPLESS_THRESHOLD, SearchParams, find_threshold, predict, threshold_scan

for l, p in threshold_scan(4096, [1, 3, 5, 6, 7]):
    print(f"l={l:g}: p_peak {p:.3f}")
print(f"bisected crossing: {find_threshold(4096, 5, 7):.3f}  (large-N value {LOOPLESS_THRESHOLD:.3f})")

# %% [markdown]
# Loop weights comparable to N need the ratio c = l/N spelled out; very large
# loops leave the walker almost still.

# %%
print(predict(SearchParams(1000, 500), c=0.5))
print(predict(SearchParams(1000, 10**6)))
