default_app_config = "aztec_dimers.apps.AztecDimersConfig"
