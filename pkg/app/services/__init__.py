import inject

# Services are resolved as runtime singletons on first use.
inject.configure_once()
