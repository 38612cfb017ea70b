% Only Bitstream talks to the bitstream store directly.
hideScopeButFrom('org.dspace.storage.bitstore.BitstreamStorageManager',
     ['org.dspace.content.Bitstream']).
