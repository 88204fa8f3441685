"""Phase-spectrum spatiotemporal saliency for video volumes.

Public API: volume containers and transforms, the phase-only saliency
engine, the synthetic motion benchmark, ROC/AUC/EER metrics, anomaly
scoring, interest-point detection, and the quaternion-FFT comparison.
"""

from .anomaly import abnormal_frames, abnormal_regions, frame_scores
from .interest import (DEFAULT_SCALES, DESCRIPTOR_LEN, DescriptorScale, InterestPoint,
                       NmsConfig, describe, detect_points, extract_all)
from .metrics import RocCurve, ScoredSamples, auc, auc_score, eer, f_measure, roc
from .qft import (ComparisonResult, QuaternionImage, channel_sum_saliency,
                  cross_correlation, inverse_qft2, qft2, qft_saliency,
                  run_qft_comparison)
from .saliency import (SmoothSpec, WindowSpec, downsample_spatial,
                       multi_channel_saliency, phase_normalize, phase_saliency,
                       rgb_to_lab, windowed_saliency)
from .synthetic import (KINDS, BenchmarkRow, GroundTruthMask, TrialConfig,
                        generate_trial, run_benchmark)
from .transform import forward_dft3, gaussian_smooth3, inverse_dft3
from .volume import BinaryVolume, ComplexVolume, SaliencyMap, Volume

__version__ = "0.1.0"

__all__ = [
    "BinaryVolume", "ComplexVolume", "SaliencyMap", "Volume",
    "forward_dft3", "inverse_dft3", "gaussian_smooth3",
    "SmoothSpec", "WindowSpec", "phase_normalize", "phase_saliency",
    "windowed_saliency", "multi_channel_saliency", "rgb_to_lab", "downsample_spatial",
    "ScoredSamples", "RocCurve", "roc", "auc", "auc_score", "f_measure", "eer",
    "KINDS", "TrialConfig", "GroundTruthMask", "BenchmarkRow",
    "generate_trial", "run_benchmark",
    "frame_scores", "abnormal_frames", "abnormal_regions",
    "InterestPoint", "NmsConfig", "DescriptorScale", "DEFAULT_SCALES", "DESCRIPTOR_LEN",
    "detect_points", "describe", "extract_all",
    "QuaternionImage", "qft2", "inverse_qft2", "qft_saliency",
    "channel_sum_saliency", "cross_correlation", "run_qft_comparison", "ComparisonResult",
    "__version__",
]
