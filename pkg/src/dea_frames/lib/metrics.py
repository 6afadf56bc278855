import prometheus_client


LP_SIZE_BUCKETS = (10, 25, 50, 100, 250, 500, 1000, 2500, 5000, 10000, 25000, float('inf'))


def make_metrics(registry=prometheus_client.REGISTRY):
    """
    Creates the metrics describing procedure runs.

    Returns:
        Dict of metric name to prometheus_client metric.
    """

    metrics = {}
    metric_prefix = 'dea_'

    counters = [
        ('lps_solved', 'Number of LPs solved', ['procedure', 'step']),
        ('dominance_lps_solved', 'Strict-dominance LPs solved in addition to score LPs', ['procedure']),
        ('hyperplane_translations', 'Separating hyperplanes translated to find a frame element', []),
        ('inner_products', 'Inner products computed during hyperplane translations', [])
    ]
    for name, doc, labels in counters:
        metrics[name] = prometheus_client.Counter(metric_prefix+name, doc, labels, registry=registry)

    gauges = [
        ('frame_size', 'Number of frame DMUs found by the last run', ['procedure']),
        ('boundary_size', 'Number of boundary DMUs found by the last run', ['procedure']),
        ('m_hat', 'Number of extreme DMUs known from preprocessing', ['procedure']),
        ('preprocess_seconds', 'Wall time of the preprocessing', ['procedure']),
        ('phase1_seconds', 'Wall time of Phase 1', ['procedure']),
        ('phase2_seconds', 'Wall time of Phase 2', ['procedure']),
        ('hyperplane_seconds', 'Wall time spent translating hyperplanes', ['procedure'])
    ]
    for name, doc, labels in gauges:
        metrics[name] = prometheus_client.Gauge(metric_prefix+name, doc, labels, registry=registry)

    histograms = [
        ('lp_size', 'Number of lambda columns per LP', ['procedure', 'step'], LP_SIZE_BUCKETS)
    ]
    for name, doc, labels, buckets in histograms:
        metrics[name] = prometheus_client.Histogram(metric_prefix+name, doc, labels, buckets=buckets,
                                                    registry=registry)

    return metrics


def _observe_step(metrics, procedure, step, lp_size, lp_count):

    metrics['lps_solved'].labels(procedure, step).inc(lp_count)
    histogram = metrics['lp_size'].labels(procedure, step)
    for _ in range(lp_count):
        histogram.observe(lp_size)


def record_frame_result(metrics, result, preprocess_seconds):
    """
    Fills the metrics from a finished BuildHull run.
    """

    procedure = 'buildhull'
    metrics['lps_solved'].labels(procedure, 'phase1').inc(result.lp_count)
    histogram = metrics['lp_size'].labels(procedure, 'phase1')
    for size in result.lp_sizes:
        histogram.observe(size)
    metrics['hyperplane_translations'].inc(result.hyperplane_translations)
    metrics['inner_products'].inc(result.inner_products)

    metrics['frame_size'].labels(procedure).set(len(result.frame))
    metrics['boundary_size'].labels(procedure).set(len(result.frame))
    metrics['m_hat'].labels(procedure).set(result.m_hat)
    metrics['preprocess_seconds'].labels(procedure).set(preprocess_seconds)
    metrics['phase1_seconds'].labels(procedure).set(result.wall_time)
    metrics['hyperplane_seconds'].labels(procedure).set(result.hyperplane_time)


def record_ehd_result(metrics, result, preprocess_seconds):
    """
    Fills the metrics from a finished EHD run.
    """

    procedure = 'ehd'
    for step, step_metrics in (('step2', result.step2), ('step3', result.step3), ('step4', result.step4)):
        _observe_step(metrics, procedure, step, step_metrics.lp_size, step_metrics.lp_count)
    metrics['dominance_lps_solved'].labels(procedure).inc(result.dominance_lp_count)

    metrics['boundary_size'].labels(procedure).set(len(result.boundary))
    metrics['m_hat'].labels(procedure).set(result.m_hat)
    metrics['preprocess_seconds'].labels(procedure).set(preprocess_seconds)
    metrics['phase1_seconds'].labels(procedure).set(result.wall_time)


def record_phase2(metrics, procedure, table):

    _observe_step(metrics, procedure, 'phase2', table.lp_size, table.lp_count)
    metrics['phase2_seconds'].labels(procedure).set(table.wall_time)


def write_metrics(path, registry=prometheus_client.REGISTRY):
    """
    Writes the registry in the text format read by the node exporter's textfile collector.
    """

    prometheus_client.write_to_textfile(path, registry)
