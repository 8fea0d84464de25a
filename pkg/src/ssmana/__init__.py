import lazy_loader as lazy

__getattr__, __dir__, __all__ = lazy.attach(
    __name__,
    submodules=[
        'measure',
        'phase',
        'fourier',
        'erdos',
        'exponent',
        'normality',
        'serialization',
        'verification',
    ],
    submod_attrs={
        'version': ['__version__'],
        'measure': ['validate', 'level_atoms'],
        'fourier': ['mu_hat', 'oscillatory'],
        'exponent': ['optimize_gamma'],
        'erdos': ['build_cover'],
        'normality': ['normality_report'],
    },
)
