from dify_plugin import Plugin, DifyPluginEnv

# the largest default truncations take a few seconds per suite
plugin = Plugin(DifyPluginEnv(MAX_REQUEST_TIMEOUT=300))

if __name__ == '__main__':
    plugin.run()
