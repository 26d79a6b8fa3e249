AOFORGE_LOG_LEVEL = 'WARNING'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
        },
    },
    'loggers': {
        'aoforge': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
