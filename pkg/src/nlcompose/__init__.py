"""nlcompose: compose and execute services from free-text requests.

Service methods are described by plain natural-language manifests; user
requests are matched to methods via averaged word-vector sentence embeddings,
arguments are resolved with entity recognition and a session working memory,
method chains come from forward-chained when/then rules, and concrete
implementations are picked by ordinal QoS requirements before execution.
"""

__version__ = "0.1.0"
